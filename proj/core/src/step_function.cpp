#include "ietflow/circle.hpp"

#include <algorithm>
#include <numeric>

namespace ietflow {

namespace {

Integer grid_of(const Rational& length, const Integer& den) {
  Rational g = length * Rational(den);
  if (denominator(g) != 1) throw DomainError("step function: length is not on the grid");
  return numerator(g);
}

Integer mod_grid(Integer x, const Integer& L) {
  x %= L;
  if (x < 0) x += L;
  return x;
}

Integer to_grid(const Rational& x, const Integer& den) {
  Rational g = x * Rational(den);
  if (denominator(g) != 1) throw DomainError("step function: point is not on the grid");
  return numerator(g);
}

// Index of the piece containing grid position x in [0, L).
size_t piece_at(const std::vector<Integer>& breaks, const Integer& x) {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  return static_cast<size_t>(it - breaks.begin()) - 1;
}

std::pair<StepFunction, StepFunction> common_grid(const StepFunction& a, const StepFunction& b) {
  if (a.length() != b.length()) throw DomainError("step functions live on different circles");
  if (a.dim() != b.dim()) throw DomainError("step functions have different value dimensions");
  Integer den = lcm(a.denominator(), b.denominator());
  return {a.refined(den), b.refined(den)};
}

template <class Op>
StepFunction combine(const StepFunction& a0, const StepFunction& b0, Op op) {
  auto [a, b] = common_grid(a0, b0);
  std::vector<Integer> breaks;
  std::merge(a.grid_breaks().begin(), a.grid_breaks().end(), b.grid_breaks().begin(),
             b.grid_breaks().end(), std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<QVector> values;
  values.reserve(breaks.size());
  size_t i = 0, j = 0;
  for (const auto& x : breaks) {
    while (i + 1 < a.pieces() && a.grid_breaks()[i + 1] <= x) ++i;
    while (j + 1 < b.pieces() && b.grid_breaks()[j + 1] <= x) ++j;
    values.push_back(op(a.values()[i], b.values()[j]));
  }
  return StepFunction::from_grid(a.length(), a.denominator(), a.grid_length(), std::move(breaks),
                                 std::move(values));
}

} // namespace

StepFunction StepFunction::constant(const Rational& length, const QVector& value) {
  if (length <= 0) throw DomainError("step function: length must be positive");
  Integer den = boost::multiprecision::denominator(length);
  return from_grid(length, den, grid_of(length, den), {Integer(0)}, {value});
}

StepFunction StepFunction::from_pieces(const Rational& length, const std::vector<Rational>& breaks,
                                       const std::vector<QVector>& values) {
  if (length <= 0) throw DomainError("step function: length must be positive");
  if (breaks.size() != values.size() || breaks.empty())
    throw DomainError("step function: need one value per breakpoint");
  Integer den = boost::multiprecision::denominator(length);
  for (const auto& b : breaks) {
    if (b < 0 || b >= length) throw DomainError("step function: breakpoint outside [0, l)");
    den = lcm(den, boost::multiprecision::denominator(b));
  }
  Integer L = grid_of(length, den);
  std::vector<size_t> idx(breaks.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return breaks[a] < breaks[b]; });
  std::vector<Integer> gb;
  std::vector<QVector> gv;
  if (breaks[idx[0]] != 0) {
    gb.push_back(0);
    gv.push_back(values[idx.back()]);
  }
  for (size_t k : idx) {
    Integer g = to_grid(breaks[k], den);
    if (!gb.empty() && gb.back() == g) throw DomainError("step function: repeated breakpoint");
    gb.push_back(g);
    gv.push_back(values[k]);
  }
  return from_grid(length, den, L, std::move(gb), std::move(gv));
}

StepFunction StepFunction::from_grid(const Rational& length, const Integer& den,
                                     const Integer& grid, std::vector<Integer> breaks,
                                     std::vector<QVector> values) {
  StepFunction f;
  f.length_ = length;
  f.den_ = den;
  f.grid_ = grid;
  for (size_t i = 0; i < breaks.size(); ++i) {
    if (i > 0 && values[i] == f.values_.back()) continue;
    f.breaks_.push_back(std::move(breaks[i]));
    f.values_.push_back(std::move(values[i]));
  }
  if (f.breaks_.empty() || f.breaks_[0] != 0) throw DomainError("step function: missing break at 0");
  return f;
}

StepFunction StepFunction::from_jumps(const Rational& length, const Integer& den,
                                      const Integer& grid,
                                      std::vector<std::pair<Integer, QVector>> jumps,
                                      const QVector& value_at_zero) {
  std::sort(jumps.begin(), jumps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Integer> breaks{Integer(0)};
  std::vector<QVector> values{value_at_zero};
  QVector cur = value_at_zero;
  size_t k = 0;
  while (k < jumps.size() && jumps[k].first == 0) ++k;
  while (k < jumps.size()) {
    const Integer& pos = jumps[k].first;
    while (k < jumps.size() && jumps[k].first == pos) {
      cur += jumps[k].second;
      ++k;
    }
    if (cur == values.back()) continue;
    breaks.push_back(pos);
    values.push_back(cur);
  }
  return from_grid(length, den, grid, std::move(breaks), std::move(values));
}

QVector StepFunction::operator()(const Rational& x) const {
  Rational y = x - Rational(floor(x / length_)) * length_;
  Rational g = y * Rational(den_);
  Integer fl = floor(g);
  return values_[piece_at(breaks_, fl)];
}

std::vector<std::pair<Rational, QVector>> StepFunction::jumps() const {
  std::vector<std::pair<Rational, QVector>> out;
  for (size_t i = 0; i < values_.size(); ++i) {
    QVector j = values_[i] - values_[i == 0 ? values_.size() - 1 : i - 1];
    if (!j.is_zero()) out.emplace_back(breakpoint(i), j);
  }
  return out;
}

QVector StepFunction::integral() const {
  QVector sum(dim());
  for (size_t i = 0; i < values_.size(); ++i) {
    const Integer& end = i + 1 < breaks_.size() ? breaks_[i + 1] : grid_;
    sum += values_[i] * Rational(end - breaks_[i], den_);
  }
  return sum;
}

StepFunction StepFunction::refined(const Integer& den) const {
  if (den % den_ != 0) throw DomainError("step function: refinement must be a multiple");
  if (den == den_) return *this;
  Integer factor = den / den_;
  StepFunction f = *this;
  f.den_ = den;
  f.grid_ = grid_ * factor;
  for (auto& b : f.breaks_) b *= factor;
  return f;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  if (a.length_ != b.length_) return false;
  if (a.den_ == b.den_) return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  Integer den = lcm(a.den_, b.den_);
  StepFunction x = a.refined(den), y = b.refined(den);
  return x.breaks_ == y.breaks_ && x.values_ == y.values_;
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const QVector& x, const QVector& y) { return x + y; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const QVector& x, const QVector& y) { return x - y; });
}

StepFunction operator*(const Rational& s, const StepFunction& f) {
  if (s == 0) return StepFunction::constant(f.length(), QVector(f.dim()));
  std::vector<QVector> vals = f.values();
  for (auto& v : vals) v *= s;
  return StepFunction::from_grid(f.length(), f.denominator(), f.grid_length(), f.grid_breaks(),
                                 std::move(vals));
}

StepFunction shifted(const StepFunction& f0, const Rational& s) {
  Integer den = lcm(f0.denominator(), denominator(s));
  StepFunction f = f0.refined(den);
  const Integer& L = f.grid_length();
  Integer S = mod_grid(to_grid(s, den), L);
  std::vector<std::pair<Integer, QVector>> jumps;
  for (const auto& [b, j] : f.jumps()) jumps.emplace_back(mod_grid(to_grid(b, den) - S, L), j);
  QVector v0 = f.values()[piece_at(f.grid_breaks(), S)];
  return StepFunction::from_jumps(f.length(), den, L, std::move(jumps), v0);
}

StepFunction birkhoff_sum(const StepFunction& f0, const Rational& alpha, long n, size_t max_jumps) {
  if (n == 0) return StepFunction::constant(f0.length(), QVector(f0.dim()));
  Integer den = lcm(f0.denominator(), denominator(alpha));
  StepFunction f = f0.refined(den);
  const Integer& L = f.grid_length();
  Integer A = mod_grid(to_grid(alpha, den), L);
  size_t count = static_cast<size_t>(n < 0 ? -n : n);
  auto fj = f.jumps();
  if (fj.size() * count > max_jumps)
    throw DomainError("birkhoff sum: breakpoint count exceeds the cap");

  std::vector<std::pair<Integer, QVector>> jumps;
  jumps.reserve(fj.size() * count);
  QVector v0(f.dim());
  if (n > 0) {
    for (const auto& [b, j] : fj) {
      Integer p = to_grid(b, den);
      for (size_t i = 0; i < count; ++i) {
        jumps.emplace_back(p, j);
        p -= A;
        if (p < 0) p += L;
      }
    }
    Integer x = 0;
    for (size_t i = 0; i < count; ++i) {
      v0 += f.values()[piece_at(f.grid_breaks(), x)];
      x += A;
      if (x >= L) x -= L;
    }
  } else {
    for (const auto& [b, j] : fj) {
      QVector neg = -j;
      Integer p = to_grid(b, den);
      for (size_t i = 0; i < count; ++i) {
        p += A;
        if (p >= L) p -= L;
        jumps.emplace_back(p, neg);
      }
    }
    Integer x = 0;
    for (size_t i = 0; i < count; ++i) {
      x -= A;
      if (x < 0) x += L;
      v0 -= f.values()[piece_at(f.grid_breaks(), x)];
    }
  }
  return StepFunction::from_jumps(f.length(), den, L, std::move(jumps), v0);
}

StepFunction tower_difference(const StepFunction& f0, const ContinuedFraction& cf, size_t n) {
  if (n % 2 == 0) throw DomainError("tower difference: index must be odd");
  if (n + 1 > cf.depth()) throw DomainError("tower difference: index beyond depth - 1");
  if (f0.length() != cf.length()) throw DomainError("tower difference: circle lengths differ");
  Rational delta = cf.delta(n);
  Integer den = lcm(lcm(f0.denominator(), denominator(cf.alpha())), denominator(delta));
  StepFunction f = f0.refined(den);
  const Integer& L = f.grid_length();
  Integer A = mod_grid(to_grid(cf.alpha(), den), L);
  Integer D = to_grid(delta, den);
  Integer q = cf.q(n);
  if (q > 100000000) throw DomainError("tower difference: q too large");
  size_t count = static_cast<size_t>(q.convert_to<long long>());

  std::vector<std::pair<Integer, QVector>> jumps;
  QVector v0(f.dim());
  for (const auto& [b, j] : f.jumps()) {
    QVector neg = -j;
    Integer start = to_grid(b, den);
    long long covering = 0;
    for (size_t i = 0; i < count; ++i) {
      Integer end = start + D;
      if (end >= L) end -= L;
      jumps.emplace_back(start, neg);
      jumps.emplace_back(end, j);
      if (start == 0 || L - start < D) ++covering;
      start -= A;
      if (start < 0) start += L;
    }
    v0 += neg * Rational(covering);
  }
  return StepFunction::from_jumps(f.length(), den, L, std::move(jumps), v0);
}

Rational AtomicMeasure::total() const {
  Rational s = 0;
  for (const auto& [v, m] : atoms) s += m;
  return s;
}

Rational JointMeasure::total() const {
  Rational s = 0;
  for (const auto& [v, m] : atoms) s += m;
  return s;
}

AtomicMeasure distribution(const StepFunction& g) {
  AtomicMeasure m;
  const auto& b = g.grid_breaks();
  for (size_t i = 0; i < g.pieces(); ++i) {
    const Integer& end = i + 1 < b.size() ? b[i + 1] : g.grid_length();
    m.atoms[g.values()[i]] += Rational(end - b[i], g.denominator());
  }
  return m;
}

JointMeasure joint_distribution(const StepFunction& g1, const StepFunction& g2) {
  auto [a, b] = common_grid(g1, g2);
  JointMeasure m;
  std::vector<Integer> breaks;
  std::merge(a.grid_breaks().begin(), a.grid_breaks().end(), b.grid_breaks().begin(),
             b.grid_breaks().end(), std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  size_t i = 0, j = 0;
  for (size_t k = 0; k < breaks.size(); ++k) {
    const Integer& x = breaks[k];
    while (i + 1 < a.pieces() && a.grid_breaks()[i + 1] <= x) ++i;
    while (j + 1 < b.pieces() && b.grid_breaks()[j + 1] <= x) ++j;
    const Integer& end = k + 1 < breaks.size() ? breaks[k + 1] : a.grid_length();
    m.atoms[{a.values()[i], b.values()[j]}] += Rational(end - x, a.denominator());
  }
  return m;
}

AtomicMeasure negated(const AtomicMeasure& m) {
  AtomicMeasure out;
  for (const auto& [v, w] : m.atoms) out.atoms[-v] += w;
  return out;
}

} // namespace ietflow
