#include "ietflow/circle.hpp"

#include "fixed_point.hpp"

namespace ietflow {

namespace {

Rational mod_length(const Rational& x, const Rational& l) {
  Rational k(floor(x / l));
  return x - k * l;
}

} // namespace

ContinuedFraction::ContinuedFraction(std::vector<Integer> quotients, Rational length)
    : a_(std::move(quotients)), l_(std::move(length)) {
  if (a_.empty()) throw DomainError("continued fraction: no partial quotients");
  if (l_ <= 0) throw DomainError("continued fraction: circle length must be positive");
  Integer pm1 = 1, qm1 = 0;
  p_.push_back(0);
  q_.push_back(1);
  for (const auto& a : a_) {
    if (a <= 0) throw DomainError("continued fraction: quotients must be positive");
    Integer pn = a * p_.back() + pm1, qn = a * q_.back() + qm1;
    pm1 = p_.back();
    qm1 = q_.back();
    p_.push_back(pn);
    q_.push_back(qn);
  }
  alpha_ = Rational(p_.back(), q_.back()) * l_;
}

ContinuedFraction ContinuedFraction::repeated(long quotient, size_t depth, Rational length) {
  return ContinuedFraction(std::vector<Integer>(depth, Integer(quotient)), std::move(length));
}

ContinuedFraction ContinuedFraction::of_rotation(const Rational& alpha, const Rational& length) {
  if (!(alpha > 0 && alpha < length)) throw DomainError("continued fraction: need 0 < alpha < l");
  std::vector<Integer> a;
  Rational r = alpha / length;
  while (r != 0) {
    Rational inv = 1 / r;
    Integer k = floor(inv);
    a.push_back(k);
    r = inv - Rational(k);
  }
  return ContinuedFraction(std::move(a), length);
}

Rational ContinuedFraction::delta(size_t n) const {
  return abs(Rational(q_.at(n)) * alpha_ - Rational(p_.at(n)) * l_);
}

std::vector<std::pair<Integer, Integer>> convergents(const std::vector<Integer>& quotients) {
  ContinuedFraction cf(quotients);
  std::vector<std::pair<Integer, Integer>> out;
  for (size_t n = 1; n <= cf.depth(); ++n) out.emplace_back(cf.p(n), cf.q(n));
  return out;
}

Rational distance_to_lattice(const Integer& q, const ContinuedFraction& cf) {
  if (q < 1) throw DomainError("distance to lattice: q must be positive");
  Rational r = mod_length(Rational(q) * cf.alpha(), cf.length());
  Rational other = cf.length() - r;
  return r < other ? r : other;
}

std::vector<size_t> rigidity_indices(const ContinuedFraction& cf, const Rational& lo,
                                     const Rational& hi) {
  std::vector<size_t> out;
  for (size_t n = 1; n + 1 <= cf.depth(); n += 2) {
    Rational v = Rational(cf.q(n)) * cf.delta(n) / cf.length();
    if (v >= lo && v <= hi) out.push_back(n);
  }
  return out;
}

bool Tower::contains(const Rational& x) const {
  // Fixed-point scan; candidates near the base are settled exactly.
  using detail::Fixed;
  Rational w = hi - lo;
  Fixed X = detail::to_fixed((x - lo) / length);
  Fixed A = detail::to_fixed(alpha / length);
  Fixed W = detail::to_fixed(w / length);
  const Fixed margin = Fixed(1) << 72;
  if (height > Integer(4000000000LL)) throw DomainError("tower: height too large");
  auto count = height.convert_to<unsigned long long>();
  Fixed y = X;
  for (unsigned long long i = 0; i < count; ++i, y -= A) {
    if (y >= W + margin && y <= Fixed(0) - margin) continue;
    Rational r = mod_length(x - lo - Rational(i) * alpha, length);
    if (r < w) return true;
  }
  return false;
}

std::vector<std::pair<Rational, Rational>> Tower::floors() const {
  std::vector<std::pair<Rational, Rational>> out;
  Rational s = mod_length(lo, length);
  for (Integer i = 0; i < height; ++i) {
    out.emplace_back(s, s + (hi - lo));
    s += alpha;
    if (s >= length) s -= length;
  }
  return out;
}

TowerPair towers_VW(const ContinuedFraction& cf, size_t n) {
  if (n < 1 || n + 1 > cf.depth()) throw DomainError("towers: index outside 1..N-1");
  Rational dn = cf.delta(n), dp = cf.delta(n - 1);
  Rational ratio = dp / dn;
  if (!(ratio > 12 && ratio < 53))
    throw DomainError("towers: ratio ||q_{n-1} alpha|| / ||q_n alpha|| = " + to_string(ratio) +
                      " outside (12, 53)");
  TowerPair t;
  t.ratio = ratio;
  t.V = {3 * dn, dp / 3, cf.q(n), cf.alpha(), cf.length()};
  t.W = {2 * dp / 3, dp - 3 * dn, cf.q(n), cf.alpha(), cf.length()};
  return t;
}

} // namespace ietflow
