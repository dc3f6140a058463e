#include "ietflow/circle.hpp"

#include "fixed_point.hpp"

#include <algorithm>

namespace ietflow {

using detail::Fixed;
using detail::from_fixed;
using detail::to_fixed;

namespace {

// Sorted walk through {-i alpha}, i < q, for q a convergent denominator:
// 0, then indices in decreasing order of {i alpha}.
struct OrbitWalk {
  Fixed A;
  size_t q, s, t;

  OrbitWalk(Fixed a, size_t q_) : A(a), q(q_), s(0), t(0) {
    if (q < 2) return;
    Fixed x = 0, lo = ~Fixed(0), hi = 0;
    for (size_t i = 1; i < q; ++i) {
      x += A;
      if (x < lo) lo = x, s = i;
      if (x > hi) hi = x, t = i;
    }
  }
  size_t first_after_zero() const { return q < 2 ? 0 : t; }
  size_t next(size_t i) const {
    if (i == 0) return first_after_zero();
    return i >= s ? i - s : i + t;
  }
  Fixed y(size_t i) const { return Fixed(0) - static_cast<Fixed>(i) * A; }
};

} // namespace

long double ApproxMeasure::total() const {
  long double s = 0;
  for (const auto& [k, m] : atoms) s += m;
  return s;
}

ApproxMeasure tower_difference_law(const StepFunction& f, const ContinuedFraction& cf, size_t n,
                                   bool backward) {
  if (n % 2 == 0) throw DomainError("tower law: index must be odd");
  if (n + 1 > cf.depth()) throw DomainError("tower law: index beyond depth - 1");
  if (f.length() != cf.length()) throw DomainError("tower law: circle lengths differ");
  const Rational& l = cf.length();
  if (cf.q(n) > Integer(1000000000)) throw DomainError("tower law: q too large");
  size_t q = static_cast<size_t>(cf.q(n).convert_to<unsigned long long>());
  Fixed A = to_fixed(cf.alpha() / l);
  Fixed D = to_fixed(cf.delta(n) / l);
  Fixed shift = backward ? to_fixed(Rational(2 * cf.q(n)) * cf.alpha() / l) : Fixed(0);
  OrbitWalk walk(A, q);

  auto jumps = f.jumps();
  if (jumps.empty()) {
    ApproxMeasure flat;
    flat.atoms[QVector(f.dim())] = 1.0L;
    return flat;
  }
  if (jumps.size() > 16) throw DomainError("tower law: at most 16 jumps");
  std::vector<QVector> value;
  for (const auto& [b, d] : jumps) value.push_back(backward ? d : -d);

  struct Head {
    Fixed z;
    size_t i, left;
  };
  std::vector<Fixed> offsets;
  std::vector<int> tower, step;
  for (size_t j = 0; j < jumps.size(); ++j) {
    Fixed b = to_fixed(jumps[j].first / l) + shift;
    offsets.push_back(b);
    tower.push_back(static_cast<int>(j));
    step.push_back(+1);
    offsets.push_back(b + D);
    tower.push_back(static_cast<int>(j));
    step.push_back(-1);
  }

  // First pass per stream: check the walk is sorted, locate the wrap and
  // count floors covering 0.
  std::vector<int> count(jumps.size(), 0);
  std::vector<Head> heads;
  for (size_t k = 0; k < offsets.size(); ++k) {
    Fixed c = offsets[k];
    size_t i = 0, wrap_i = 0;
    bool wrapped = false;
    Fixed prev = 0;
    for (size_t m = 0; m < q; ++m) {
      Fixed y = walk.y(i);
      if (m > 0 && y <= prev) throw DomainError("tower law: orbit walk is not sorted");
      prev = y;
      Fixed z = c + y;
      if (!wrapped && z < c) {
        wrapped = true;
        wrap_i = i;
      }
      // floors covering 1^- are open at the sweep start
      if (step[k] > 0 && z != 0 && z + D < z) ++count[tower[k]];
      i = walk.next(i);
    }
    size_t s = wrapped ? wrap_i : 0;
    heads.push_back({c + walk.y(s), s, q});
  }

  auto key_of = [&]() {
    unsigned long long key = 0;
    for (size_t j = 0; j < count.size(); ++j)
      key |= static_cast<unsigned long long>(static_cast<unsigned char>(count[j] + 8) & 0xF) << (4 * j);
    return key;
  };
  std::vector<std::pair<unsigned long long, std::vector<int>>> states;
  std::vector<Fixed> mass;
  auto credit = [&](Fixed len) {
    if (len == 0) return;
    unsigned long long key = key_of();
    for (size_t s = 0; s < states.size(); ++s)
      if (states[s].first == key) {
        mass[s] += len;
        return;
      }
    states.emplace_back(key, count);
    mass.push_back(len);
  };

  Fixed pos = 0;
  while (true) {
    size_t best = heads.size();
    for (size_t k = 0; k < heads.size(); ++k)
      if (heads[k].left > 0 && (best == heads.size() || heads[k].z < heads[best].z)) best = k;
    if (best == heads.size()) break;
    Head& h = heads[best];
    if (h.z < pos) throw DomainError("tower law: sweep out of order");
    credit(h.z - pos);
    pos = h.z;
    count[tower[best]] += step[best];
    if (--h.left > 0) {
      h.i = walk.next(h.i);
      h.z = offsets[best] + walk.y(h.i);
    }
  }
  credit(Fixed(0) - pos);

  ApproxMeasure out;
  for (size_t s = 0; s < states.size(); ++s) {
    QVector at(f.dim());
    for (size_t j = 0; j < value.size(); ++j)
      if (states[s].second[j] != 0) at += value[j] * Rational(states[s].second[j]);
    long double m = from_fixed(mass[s]);
    if (m < 1e-24L) continue;
    out.atoms[at] += m;
  }
  return out;
}

} // namespace ietflow
