#include "ietflow/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace ietflow {

namespace {

std::array<int, 4> hat_symbols(const LabeledPermutation& p, const AcceptableSymbols& s) {
  return {p.top(0), s.alpha1, s.alpha2, p.top(p.d() - 1)};
}

} // namespace

HatDatum reduce_to_hat(const LabeledPermutation& p, const AcceptableSymbols& s,
                       const HatLengths& lambda_hat, const std::vector<QVector>& tau,
                       const FormalBasis& basis, bool require_independent) {
  if (!satisfies_acceptable(p, s)) throw DomainError("hat reduction: symbols are not acceptable");
  size_t d = p.d();
  if (tau.size() != d) throw DomainError("hat reduction: tau size differs from d");
  for (const auto& t : tau)
    if (t.dim() != basis.dim()) throw DomainError("hat reduction: tau dimension differs from basis");
  for (const auto& l : lambda_hat)
    if (l <= 0) throw DomainError("hat reduction: lengths must be positive");
  if (require_independent && rank_over_Q(tau) != d)
    throw DomainError("hat reduction: tau is not rationally independent");

  HatDatum hat;
  hat.symbols = s;
  hat.ambient = hat_symbols(p, s);
  std::vector<Rational> lambda(d, Rational(0));
  for (int i = 0; i < 4; ++i) lambda[hat.ambient[i]] = lambda_hat[i];
  hat.full = {p, lambda, tau, basis};
  auto theta = validate_theta(hat.full);
  if (!theta.ok) throw DomainError("hat reduction: datum outside Theta: " + theta.violation);
  auto h = roof_from_tau(p, tau, basis);

  std::vector<std::string> names;
  for (int a : hat.ambient) names.push_back(p.alphabet()[a]);
  hat.flow.perm = LabeledPermutation(names, {0, 1, 2, 3}, {3, 1, 2, 0});
  hat.flow.lambda.assign(lambda_hat.begin(), lambda_hat.end());
  for (int a : hat.ambient) hat.flow.h.push_back(h[a]);
  hat.flow.basis = basis;
  return hat;
}

std::pair<QVector, QVector> symbolic_jumps(const LabeledPermutation& p, const AcceptableSymbols& s,
                                           const std::vector<QVector>& tau) {
  if (tau.size() != p.d() || tau.empty()) throw DomainError("jumps: tau size differs from d");
  auto om = translation_matrix(p);
  auto omega_tau = [&](int a) {
    QVector v(tau[0].dim());
    for (size_t b = 0; b < p.d(); ++b)
      if (om[a][b] != 0) v += tau[b] * Rational(om[a][b]);
    return v;
  };
  auto sym = hat_symbols(p, s);
  QVector d1 = omega_tau(sym[0]) + omega_tau(sym[3]) - omega_tau(s.alpha1);
  QVector d2 = omega_tau(s.alpha1) - omega_tau(s.alpha2);
  return {d1, d2};
}

RotationSpecialFlow to_rotation_flow(const HatDatum& hat) {
  const auto& f = hat.flow;
  if (f.perm.d() != 4) throw DomainError("rotation flow: expected 4 symbols");
  const Rational &x = f.lambda[0], &v = f.lambda[3];
  if (x == v) throw DomainError("induction undefined: equal lengths of first and last symbols");

  RotationSpecialFlow r;
  r.right_side = x > v;
  r.induced = r.right_side ? polygonal_rv_right(f) : polygonal_rv_left(f);
  const auto& g = r.induced;
  const auto& t = g.perm.top_row();
  const auto& b = g.perm.bottom_row();
  r.length = 0;
  for (const auto& l : g.lambda) r.length += l;
  if (b == std::vector<int>{t[1], t[2], t[3], t[0]}) r.alpha = r.length - g.lambda[t[0]];
  else if (b == std::vector<int>{t[3], t[0], t[1], t[2]}) r.alpha = g.lambda[t[3]];
  else throw DomainError("rotation flow: induced exchange is not a rotation");

  std::vector<Rational> breaks;
  std::vector<QVector> values;
  Rational s = 0;
  for (int a : t) {
    breaks.push_back(s);
    values.push_back(g.h[a]);
    s += g.lambda[a];
  }
  r.roof = StepFunction::from_pieces(r.length, breaks, values);

  Rational back = r.length - r.alpha;
  std::vector<Rational> inner;
  for (const auto& p : breaks)
    if (p != 0 && p != back) inner.push_back(p);
  if (inner.size() != 2) throw DomainError("rotation flow: discontinuities collide");
  std::sort(inner.begin(), inner.end());
  r.beta1 = inner[0];
  r.beta2 = inner[1];
  auto jump = [&](const Rational& p) {
    size_t i = std::find(breaks.begin(), breaks.end(), p) - breaks.begin();
    size_t j = (i + breaks.size() - 1) % breaks.size();
    return values[i] - values[j];
  };
  r.d_beta1 = jump(r.beta1);
  r.d_beta2 = jump(r.beta2);
  r.d_zero = jump(Rational(0));
  r.d_back = jump(back);
  return r;
}

std::pair<QVector, QVector> jump_vectors(const RotationSpecialFlow& flow) {
  return {flow.d_beta1, flow.d_beta2};
}

std::array<Rational, 4> phi_map(const HatLengths& v) {
  return {v[0] - v[3], v[3], v[1], v[2]};
}

std::array<Rational, 4> psi_map(const std::array<Rational, 4>& v) {
  return {v[0] + v[1] + v[2] + v[3], v[1] + v[2] + v[3], v[0] + v[1], v[0] + v[1] + v[2]};
}

HatLengths hat_from_rotation(const Rational& l, const Rational& alpha, const Rational& b1,
                             const Rational& b2) {
  if (!(0 < l - alpha && l - alpha < b1 && b1 < b2 && b2 < l))
    throw DomainError("rotation data outside 0 < l - alpha < beta1 < beta2 < l");
  return {b1, b2 - b1, l - b2, alpha - l + b1};
}

const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::satisfied: return "criterion satisfied";
  case Verdict::not_satisfied: return "criterion not satisfied";
  case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

AtomAnalysis atom_analysis(const RotationSpecialFlow& flow, const ContinuedFraction& cf,
                           std::optional<size_t> index, const Rational& window_lo,
                           const Rational& window_hi, size_t exact_cap) {
  if (cf.length() != flow.length || cf.alpha() != flow.alpha)
    throw DomainError("atom analysis: continued fraction does not match the rotation");
  AtomAnalysis a;
  auto rig = rigidity_indices(cf, window_lo, window_hi);
  if (index) {
    if (std::find(rig.begin(), rig.end(), *index) == rig.end())
      throw DomainError("atom analysis: " + std::to_string(*index) + " is not a rigidity index");
    a.index = *index;
  } else if (!rig.empty()) {
    a.index = rig.front();
  } else {
    a.backward_method = "none";
    return a;
  }
  size_t n = a.index;
  a.q = cf.q(n);
  a.delta = cf.delta(n);
  a.epsilon = Rational(a.q) * a.delta / flow.length;

  try {
    auto t = towers_VW(cf, n);
    bool v1 = t.V.contains(flow.beta1), w2 = t.W.contains(flow.beta2);
    bool w1 = t.W.contains(flow.beta1), v2 = t.V.contains(flow.beta2);
    a.beta1_in_V = v1;
    a.beta2_in_W = w2;
    a.swapped = !(v1 && w2) && (w1 && v2);
    a.membership = (v1 && w2) || (w1 && v2);
  } catch (const DomainError&) {
    a.membership = false;
  }

  size_t jumps = flow.roof.jumps().size();
  a.exact = a.q <= Integer(1000000) && 2 * a.q.convert_to<size_t>() * jumps <= exact_cap;
  if (a.exact) {
    long q = a.q.convert_to<long>();
    StepFunction g = tower_difference(flow.roof, cf, n);
    a.forward = distribution(g);
    StepFunction back = 2 * birkhoff_sum(flow.roof, flow.alpha, -q) -
                        birkhoff_sum(flow.roof, flow.alpha, -2 * q);
    a.backward = distribution(back);
    a.backward_method = "birkhoff";
    a.backward_is_negation = a.backward.atoms == negated(a.forward).atoms;
    for (const auto& [at, m] : a.forward.atoms)
      a.forward_normalized.atoms[at] = to_long_double(m / flow.length);
    for (const auto& [at, m] : a.backward.atoms)
      a.backward_normalized.atoms[at] = to_long_double(m / flow.length);
  } else {
    a.forward_normalized = tower_difference_law(flow.roof, cf, n);
    a.backward_normalized = tower_difference_law(flow.roof, cf, n, true);
    a.backward_method = "fixed-point sweep";
  }

  const Rational& dl = a.delta;
  Rational qd = Rational(a.q) * dl;
  size_t dim = flow.roof.dim();
  auto add = [&](const QVector& at, const Rational& m) { a.predicted[at] += m; };
  add(QVector(dim), flow.length - (3 * Rational(a.q) + 1) * dl);
  add(-flow.d_beta1, qd);
  add(-flow.d_beta2, qd);
  add(flow.d_beta1 + flow.d_beta2, qd - dl);
  add(-flow.d_zero, dl);
  add(-flow.d_back, dl);
  for (auto it = a.predicted.begin(); it != a.predicted.end();)
    it = it->second == 0 ? a.predicted.erase(it) : std::next(it);

  // Key sets must agree; masses are compared after normalization.
  auto gap = [](const std::map<QVector, long double>& x, const std::map<QVector, long double>& y) {
    long double worst = 0;
    if (x.size() != y.size()) return 1.0L;
    for (const auto& [k, m] : x) {
      auto it = y.find(k);
      if (it == y.end()) return 1.0L;
      worst = std::max(worst, std::fabs(m - it->second));
    }
    return worst;
  };
  std::map<QVector, long double> predicted;
  for (const auto& [at, m] : a.predicted) predicted[at] = to_long_double(m / flow.length);
  std::map<QVector, long double> mirrored;
  for (const auto& [at, m] : a.forward_normalized.atoms) mirrored[-at] = m;
  a.max_mass_error = gap(a.forward_normalized.atoms, predicted);
  if (a.exact) {
    a.forward_matches_prediction = a.forward.atoms == a.predicted;
  } else {
    a.forward_matches_prediction = a.max_mass_error <= 1e-12L;
    a.backward_is_negation = gap(a.backward_normalized.atoms, mirrored) <= 1e-12L;
  }

  long double floor_mass = to_long_double(window_lo / 2);
  for (const auto& [at, m] : a.forward_normalized.atoms)
    if (m >= floor_mass) a.dominant_forward.push_back(at);
  for (const auto& [at, m] : a.backward_normalized.atoms)
    if (m >= floor_mass) a.dominant_backward.push_back(at);
  return a;
}

Verdicts verdicts_from_atoms(const std::vector<QVector>& forward,
                             const std::vector<QVector>& backward, bool membership) {
  Verdicts v;
  if (!membership) {
    v.weak_mixing_reason = v.disjointness_reason = "tower membership of beta1, beta2 not verified";
    return v;
  }
  bool zero = false;
  std::vector<QVector> nonzero;
  for (const auto& x : forward) {
    if (x.is_zero()) zero = true;
    else nonzero.push_back(x);
  }
  bool pair = false;
  for (size_t i = 0; i < nonzero.size() && !pair; ++i)
    for (size_t j = i + 1; j < nonzero.size() && !pair; ++j)
      pair = rationally_independent(nonzero[i], nonzero[j]);
  if (zero && pair) {
    v.weak_mixing = Verdict::satisfied;
    v.weak_mixing_reason = "0 and two rationally independent values are atoms of the forward law";
  } else {
    v.weak_mixing_reason = zero ? "dominant atoms are pairwise rationally dependent"
                                : "0 is not a dominant atom";
  }
  std::set<QVector> f(forward.begin(), forward.end()), b(backward.begin(), backward.end());
  if (f != b) {
    v.disjointness = Verdict::satisfied;
    v.disjointness_reason = "forward and backward atom sets differ";
  } else {
    v.disjointness = Verdict::not_satisfied;
    v.disjointness_reason = "forward and backward atom sets coincide";
  }
  return v;
}

Verdicts verdicts(const AtomAnalysis& a) {
  return verdicts_from_atoms(a.dominant_forward, a.dominant_backward, a.membership);
}

std::pair<std::vector<QVector>, TauSearch> default_tau(const LabeledPermutation& p,
                                                       const std::vector<Rational>& lambda,
                                                       bool dependent) {
  size_t d = p.d();
  FormalBasis one(1);
  auto valid = [&](const std::vector<QVector>& tau, const FormalBasis& basis) {
    SuspensionDatum s{p, lambda, tau, basis};
    if (!validate_theta(s).ok) return false;
    try {
      roof_from_tau(p, tau, basis);
    } catch (const DomainError&) {
      return false;
    }
    return true;
  };
  for (long K = 1; K <= 4; ++K) {
    std::vector<long> vals;
    for (long k = -K; k <= K; ++k)
      if (k != 0) vals.push_back(k);
    std::vector<size_t> idx(d, 0);
    while (true) {
      std::vector<long> t0(d);
      bool has_max = false;
      for (size_t i = 0; i < d; ++i) {
        t0[i] = vals[idx[i]];
        has_max |= std::abs(t0[i]) == K;
      }
      std::vector<QVector> tau;
      for (long t : t0) tau.push_back(QVector::scalar(Rational(t)));
      if (has_max && valid(tau, one)) {
        TauSearch ts{t0, Rational(0)};
        if (dependent) return {tau, ts};
        FormalBasis basis(d + 1);
        for (Rational c(1, 64); c > Rational(1, Integer(1) << 40); c /= 2) {
          std::vector<QVector> pert;
          for (size_t a = 0; a < d; ++a)
            pert.push_back(QVector::unit(d + 1, 0, Rational(t0[a])) + QVector::unit(d + 1, a + 1, c));
          if (valid(pert, basis)) {
            ts.perturbation = c;
            return {pert, ts};
          }
        }
      }
      size_t i = d;
      while (i > 0 && ++idx[i - 1] == vals.size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  throw DomainError("default tau: no integer tau with |tau_a| <= 4 satisfies Theta");
}

LambdaSearch search_lambda_hat(const ContinuedFraction& cf, size_t index, long grid,
                               unsigned long long seed) {
  if (grid < 2) throw DomainError("lambda search: grid must be at least 2");
  auto t = towers_VW(cf, index);
  const Rational& l = cf.length();
  Rational lo = l - cf.alpha();
  std::vector<Rational> cand;
  for (long k = 1; k < grid; ++k) {
    Rational b = Rational(k, grid) * l;
    if (b > lo && b < l) cand.push_back(b);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(cand.begin(), cand.end(), rng);
  std::vector<char> inV(cand.size()), inW(cand.size());
  for (size_t i = 0; i < cand.size(); ++i) {
    inV[i] = t.V.contains(cand[i]);
    inW[i] = t.W.contains(cand[i]);
  }
  LambdaSearch out{{}, grid, seed, 0};
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = 0; j < cand.size(); ++j) {
      if (!(cand[i] < cand[j])) continue;
      ++out.tried;
      if ((inV[i] && inW[j]) || (inW[i] && inV[j])) {
        out.lambda_hat = hat_from_rotation(l, cf.alpha(), cand[i], cand[j]);
        return out;
      }
    }
  throw DomainError("lambda search: no grid pair lies in the towers; refine the grid");
}

VerdictReport run_pipeline(const PipelineConfig& config) {
  VerdictReport r;
  r.config = config;
  r.perm = LabeledPermutation::parse(config.permutation);
  if (is_symmetric(r.perm))
    throw DomainError("acceptable-symbol stage: symmetric permutation has no acceptable symbols");
  auto acc = find_acceptable_symbols(r.perm);
  if (!acc) throw DomainError("acceptable-symbol stage: no acceptable symbols");
  r.symbols = *acc;

  HatLengths lambda_hat;
  std::optional<size_t> index = config.rigidity_index;
  if (config.lambda_hat) {
    lambda_hat = *config.lambda_hat;
  } else {
    auto cf = ContinuedFraction::repeated(config.cf_quotient, config.cf_depth);
    auto rig = rigidity_indices(cf, config.window_lo, config.window_hi);
    if (!index && rig.empty()) throw DomainError("lambda search: no rigidity index in the window");
    r.lambda_search = search_lambda_hat(cf, index ? *index : rig.front(), config.grid, config.seed);
    lambda_hat = r.lambda_search->lambda_hat;
  }

  size_t d = r.perm.d();
  auto ambient = hat_symbols(r.perm, r.symbols);
  if (config.tau) {
    r.tau = *config.tau;
  } else {
    std::vector<Rational> lambda(d, Rational(0));
    for (int i = 0; i < 4; ++i) lambda[ambient[i]] = lambda_hat[i];
    auto [tau, ts] = default_tau(r.perm, lambda, config.tau_dependent);
    r.tau = tau;
    r.tau_search = ts;
  }
  size_t dim = r.tau.empty() ? 0 : r.tau[0].dim();
  if (!config.basis_names.empty()) {
    if (config.basis_names.size() != dim) throw DomainError("basis size differs from tau dimension");
    r.basis = FormalBasis(config.basis_names);
  } else {
    r.basis = FormalBasis(dim);
  }

  bool independent_tau = !config.tau_dependent;
  r.hat = reduce_to_hat(r.perm, r.symbols, lambda_hat, r.tau, r.basis, independent_tau);
  r.flow = to_rotation_flow(r.hat);
  r.jumps_independent = rationally_independent(r.flow.d_beta1, r.flow.d_beta2);
  if (config.lambda_hat) {
    r.cf = ContinuedFraction::of_rotation(r.flow.alpha, r.flow.length);
  } else {
    r.cf = ContinuedFraction::repeated(config.cf_quotient, config.cf_depth, r.flow.length);
  }
  r.rigidity = rigidity_indices(r.cf, config.window_lo, config.window_hi);
  r.analysis = atom_analysis(r.flow, r.cf, index, config.window_lo, config.window_hi);
  r.verdict = verdicts(r.analysis);
  return r;
}

} // namespace ietflow
