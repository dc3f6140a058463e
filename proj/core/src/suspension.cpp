#include "ietflow/suspension.hpp"

#include <algorithm>

namespace ietflow {

namespace {

void check_shape(const LabeledPermutation& p, size_t lambda, size_t other) {
  if (lambda != p.d() || other != p.d())
    throw DomainError("suspension datum: vector sizes differ from d");
}

ThetaCheck theta_on_rows(const SuspensionDatum& s, const std::vector<int>& top,
                         const std::vector<int>& bottom, int tau_sign) {
  size_t d = top.size();
  size_t dim = s.basis.dim();
  auto row_check = [&](const std::vector<int>& row, int want, const char* name) -> ThetaCheck {
    QVector sum(dim);
    for (size_t k = 0; k + 1 < d; ++k) {
      QVector t = s.tau[row[k]];
      if (tau_sign < 0) t = -t;
      sum += t;
      int sg = certified_sign(sum, s.basis);
      if (sg != want)
        return {false, std::string(name) + " partial sum " + std::to_string(k + 1) +
                           (want > 0 ? " is not positive" : " is not negative")};
    }
    return {};
  };
  if (auto c = row_check(top, 1, "top"); !c.ok) return c;
  if (auto c = row_check(bottom, -1, "bottom"); !c.ok) return c;
  for (const auto* row : {&top, &bottom})
    for (size_t k = 0; k + 1 < d; ++k) {
      int a = (*row)[k], b = (*row)[k + 1];
      if (s.lambda[a] != 0 || s.lambda[b] != 0) continue;
      int sa = certified_sign(s.tau[a], s.basis), sb = certified_sign(s.tau[b], s.basis);
      if (sa * sb <= 0)
        return {false, "zero-length neighbours " + s.perm.alphabet()[a] + "," +
                           s.perm.alphabet()[b] + " have tau of opposite sign"};
    }
  return {};
}

} // namespace

ThetaCheck validate_theta(const SuspensionDatum& s) {
  check_shape(s.perm, s.lambda.size(), s.tau.size());
  for (const auto& l : s.lambda)
    if (l < 0) return {false, "negative length"};
  return theta_on_rows(s, s.perm.top_row(), s.perm.bottom_row(), 1);
}

ThetaCheck validate_theta_mirrored(const SuspensionDatum& s) {
  return validate_theta(reflect(s));
}

std::vector<QVector> roof_from_tau(const LabeledPermutation& p, const std::vector<QVector>& tau,
                                   const FormalBasis& basis) {
  size_t d = p.d();
  if (tau.size() != d) throw DomainError("roof: tau size differs from d");
  auto om = translation_matrix(p);
  std::vector<QVector> h(d, QVector(basis.dim()));
  for (size_t a = 0; a < d; ++a) {
    for (size_t b = 0; b < d; ++b)
      if (om[a][b] != 0) h[a] -= tau[b] * Rational(om[a][b]);
    if (certified_sign(h[a], basis) <= 0)
      throw DomainError("roof: component " + p.alphabet()[a] + " is not positive");
  }
  return h;
}

FlowDatum to_flow(const SuspensionDatum& s) {
  return {s.perm, s.lambda, roof_from_tau(s.perm, s.tau, s.basis), s.basis};
}

QVector area(const std::vector<Rational>& lambda, const std::vector<QVector>& h) {
  if (lambda.size() != h.size()) throw DomainError("area: size mismatch");
  QVector sum(h.empty() ? 0 : h[0].dim());
  for (size_t a = 0; a < h.size(); ++a) sum += h[a] * lambda[a];
  return sum;
}

SuspensionDatum reflect(const SuspensionDatum& s) {
  SuspensionDatum r = s;
  r.perm = s.perm.reversed();
  for (auto& t : r.tau) t = -t;
  return r;
}

FlowDatum reflect(const FlowDatum& f) {
  FlowDatum r = f;
  r.perm = f.perm.reversed();
  return r;
}

RvCase rv_case_right(const LabeledPermutation& p, const std::vector<Rational>& lambda) {
  size_t d = p.d();
  int t = p.top(d - 1), b = p.bottom(d - 1);
  if (lambda[t] == lambda[b]) throw DomainError("induction undefined: equal last lengths");
  if (lambda[t] < lambda[b]) return {RauzyKind::bottom, b, t};
  return {RauzyKind::top, t, b};
}

SuspensionDatum polygonal_rv_right(const SuspensionDatum& s) {
  check_shape(s.perm, s.lambda.size(), s.tau.size());
  RvCase c = rv_case_right(s.perm, s.lambda);
  SuspensionDatum r = s;
  r.perm = rauzy_move(s.perm, c.kind);
  r.lambda[c.winner] -= s.lambda[c.loser];
  r.tau[c.winner] -= s.tau[c.loser];
  return r;
}

FlowDatum polygonal_rv_right(const FlowDatum& f) {
  check_shape(f.perm, f.lambda.size(), f.h.size());
  RvCase c = rv_case_right(f.perm, f.lambda);
  FlowDatum r = f;
  r.perm = rauzy_move(f.perm, c.kind);
  r.lambda[c.winner] -= f.lambda[c.loser];
  r.h[c.loser] += f.h[c.winner];
  return r;
}

SuspensionDatum polygonal_rv_left(const SuspensionDatum& s) {
  size_t d = s.perm.d();
  if (s.lambda[s.perm.top(0)] == s.lambda[s.perm.bottom(0)] && d > 0)
    throw DomainError("induction undefined: equal first lengths");
  return reflect(polygonal_rv_right(reflect(s)));
}

FlowDatum polygonal_rv_left(const FlowDatum& f) {
  if (f.lambda[f.perm.top(0)] == f.lambda[f.perm.bottom(0)])
    throw DomainError("induction undefined: equal first lengths");
  return reflect(polygonal_rv_right(reflect(f)));
}

Real mod_distance(const SuspensionDatum& a, const SuspensionDatum& b) {
  if (!(a.perm == b.perm)) throw DomainError("mod distance: permutations differ");
  Real sum = 0;
  for (size_t i = 0; i < a.lambda.size(); ++i) {
    sum += to_real(abs(a.lambda[i] - b.lambda[i]));
    Real t = evaluate_numeric(a.tau[i] - b.tau[i], a.basis);
    sum += t < 0 ? Real(-t) : t;
  }
  return sum;
}

std::pair<Rational, QVector> vertical_first_return(const SuspensionDatum& s, const Rational& x) {
  const auto& p = s.perm;
  int a = iet_interval(p, s.lambda, x);
  Rational top_start = 0, bottom_start = 0;
  QVector top_y(s.basis.dim()), bottom_y(s.basis.dim());
  for (int i = 0; i < p.pos0(a); ++i) {
    top_start += s.lambda[p.top(i)];
    top_y += s.tau[p.top(i)];
  }
  for (int i = 0; i < p.pos1(a); ++i) {
    bottom_start += s.lambda[p.bottom(i)];
    bottom_y += s.tau[p.bottom(i)];
  }
  // The hit point on top side a and its copy on bottom side a share the
  // same offset along the side, so heights differ by the side offsets.
  Rational landing = bottom_start + (x - top_start);
  return {landing, top_y - bottom_y};
}

} // namespace ietflow
