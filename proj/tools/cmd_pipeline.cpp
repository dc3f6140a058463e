#include "commands.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

namespace ietflow::cli {

namespace {

std::vector<Integer> parse_quotients(const std::string& text) {
  std::vector<Integer> q;
  std::string tok;
  std::istringstream in(text);
  auto push = [&](const std::string& t) {
    if (t.empty()) return;
    auto x = t.find('x');
    try {
      long a = std::stol(t.substr(0, x));
      size_t rep = x == std::string::npos ? 1 : std::stoul(t.substr(x + 1));
      if (a < 1 || rep < 1 || rep > 100000) throw std::invalid_argument(t);
      q.insert(q.end(), rep, Integer(a));
    } catch (const std::logic_error&) {
      throw UsageError("bad partial quotient \"" + t + "\"");
    }
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == ';') {
      push(tok);
      tok.clear();
    } else {
      tok += c;
    }
  }
  push(tok);
  if (q.empty()) throw UsageError("no partial quotients given");
  return q;
}

Rational arg_rational(const std::string& s) { return rational_from(json(s)); }

const char* status_of(const Verdicts& v) {
  if (v.weak_mixing == Verdict::inconclusive || v.disjointness == Verdict::inconclusive)
    return "inconclusive";
  if (v.weak_mixing == Verdict::satisfied && v.disjointness == Verdict::satisfied) return "satisfied";
  return "not_satisfied";
}

json locations(const std::vector<QVector>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

PipelineConfig read_config(const json& j) {
  PipelineConfig c;
  if (!j.is_object()) throw UsageError("pipeline config must be a JSON object");
  if (!j.contains("permutation")) throw UsageError("pipeline config needs \"permutation\"");
  const auto& p = j.at("permutation");
  auto perm = permutation_from(p);
  c.permutation = p.is_string() ? p.get<std::string>() : perm.text();
  try {
    if (j.contains("basis")) c.basis_names = j.at("basis").get<std::vector<std::string>>();
    if (j.contains("cf")) {
      const auto& cf = j.at("cf");
      c.cf_quotient = cf.value("quotient", c.cf_quotient);
      c.cf_depth = cf.value("depth", c.cf_depth);
    }
    if (j.contains("lambda_search")) {
      const auto& s = j.at("lambda_search");
      c.grid = s.value("grid", c.grid);
      c.seed = s.value("seed", c.seed);
    }
    if (j.contains("window")) {
      const auto& w = j.at("window");
      if (!w.is_array() || w.size() != 2) throw UsageError("window must be [lo, hi]");
      c.window_lo = rational_from(w[0]);
      c.window_hi = rational_from(w[1]);
    }
    if (j.contains("rigidity_index")) c.rigidity_index = j.at("rigidity_index").get<size_t>();
    c.tau_dependent = j.value("tau_dependent", false);
    if (j.contains("lambda_hat")) {
      const auto& l = j.at("lambda_hat");
      if (!l.is_array() || l.size() != 4) throw UsageError("lambda_hat needs 4 entries");
      c.lambda_hat = HatLengths{rational_from(l[0]), rational_from(l[1]), rational_from(l[2]),
                                rational_from(l[3])};
    }
    if (j.contains("tau")) {
      size_t dim = c.basis_names.empty() ? 0 : c.basis_names.size();
      std::vector<QVector> tau;
      for (const auto& t : j.at("tau")) {
        if (dim == 0) dim = t.is_object() ? t.at("coeffs").size() : 1;
        tau.push_back(qvector_from(t, dim));
      }
      if (tau.size() != perm.d()) throw UsageError("tau needs one entry per symbol");
      c.tau = tau;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad pipeline config: ") + e.what());
  }
  if (c.cf_quotient < 1 || c.cf_depth < 2 || c.grid < 2) throw UsageError("cf and grid parameters must be positive");
  return c;
}

json config_json(const PipelineConfig& c) {
  json j = {{"permutation", c.permutation},
            {"cf", {{"quotient", c.cf_quotient}, {"depth", c.cf_depth}}},
            {"lambda_search", {{"grid", c.grid}, {"seed", c.seed}}},
            {"window", json::array({to_string(c.window_lo), to_string(c.window_hi)})},
            {"tau_dependent", c.tau_dependent}};
  if (!c.basis_names.empty()) j["basis"] = c.basis_names;
  if (c.rigidity_index) j["rigidity_index"] = *c.rigidity_index;
  if (c.lambda_hat) {
    json l = json::array();
    for (const auto& x : *c.lambda_hat) l.push_back(to_string(x));
    j["lambda_hat"] = l;
  }
  if (c.tau) {
    json t = json::array();
    for (const auto& x : *c.tau) t.push_back(to_json(x));
    j["tau"] = t;
  }
  return j;
}

std::string distribution_csv(const AtomAnalysis& a) {
  std::ostringstream out;
  out << "table,location,mass,precision\n";
  auto exact = [&](const char* name, const std::map<QVector, Rational>& m) {
    for (const auto& [loc, mass] : m)
      out << name << ',' << csv_field(to_string(loc)) << ',' << to_string(mass) << ",exact\n";
  };
  auto approx = [&](const char* name, const std::map<QVector, long double>& m) {
    for (const auto& [loc, mass] : m)
      out << name << ',' << csv_field(to_string(loc)) << ',' << decimal(mass) << ','
          << std::numeric_limits<long double>::digits << "-bit\n";
  };
  if (a.exact) {
    exact("forward", a.forward.atoms);
    exact("backward", a.backward.atoms);
  }
  approx("forward_normalized", a.forward_normalized.atoms);
  approx("backward_normalized", a.backward_normalized.atoms);
  exact("predicted", a.predicted);
  return out.str();
}

} // namespace

int cf(const Context& ctx, const std::string& alpha, const std::string& length, bool rigidity,
       const std::string& lo, const std::string& hi) {
  auto quotients = parse_quotients(alpha);
  Rational l = arg_rational(length);
  if (l <= 0) throw UsageError("--length must be positive");
  ContinuedFraction c(quotients, l);
  json params = {{"alpha", alpha}, {"length", to_string(l)}, {"rigidity", rigidity}};
  if (rigidity) params["window"] = json::array({lo, hi});
  json r;
  r["manifest"] = manifest("cf", params);
  r["depth"] = c.depth();
  r["alpha"] = to_string(c.alpha());
  json conv = json::array();
  for (size_t n = 1; n <= c.depth(); ++n) {
    Rational d = c.delta(n);
    conv.push_back({{"n", n},
                    {"p", c.p(n).str()},
                    {"q", c.q(n).str()},
                    {"delta", to_string(d)},
                    {"q_delta_over_l", tagged(to_real(Rational(c.q(n)) * d / l))}});
  }
  r["convergents"] = conv;
  if (rigidity) r["rigidity_indices"] = rigidity_indices(c, arg_rational(lo), arg_rational(hi));
  emit(ctx, r);
  return 0;
}

int pipeline_run(const Context& ctx, const PipelineOptions& opt) {
  auto cfg = read_config(read_json(opt.config));
  if (opt.depth) {
    if (*opt.depth < 2) throw UsageError("--depth must be at least 2");
    cfg.cf_depth = *opt.depth;
  }
  if (opt.tau_dependent) cfg.tau_dependent = true;

  auto t0 = std::chrono::steady_clock::now();
  auto rep = run_pipeline(cfg);
  auto t1 = std::chrono::steady_clock::now();
  if (ctx.verbose)
    std::cerr << "pipeline: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  const auto& a = rep.analysis;
  json r;
  r["manifest"] = manifest("pipeline run", config_json(cfg),
                           {{"lambda_search", cfg.seed}});
  r["status"] = status_of(rep.verdict);
  r["permutation"] = to_json(rep.perm);
  const auto& al = rep.perm.alphabet();
  r["acceptable_symbols"] = {{"alpha1", al[rep.symbols.alpha1]},
                             {"alpha2", al[rep.symbols.alpha2]},
                             {"gamma1", al[rep.symbols.gamma1]},
                             {"gamma2", al[rep.symbols.gamma2]}};
  if (rep.lambda_search) {
    json l = json::array();
    for (const auto& x : rep.lambda_search->lambda_hat) l.push_back(to_string(x));
    r["lambda_search"] = {{"lambda_hat", l},
                          {"grid", rep.lambda_search->grid},
                          {"seed", rep.lambda_search->seed},
                          {"tried", rep.lambda_search->tried}};
  }
  if (rep.tau_search)
    r["tau_search"] = {{"integer_part", rep.tau_search->integer_part},
                       {"perturbation", to_string(rep.tau_search->perturbation)}};
  r["basis"] = rep.basis.names();
  r["tau"] = locations(rep.tau);
  r["full_datum"] = to_json(rep.hat.full);
  r["hat_flow"] = to_json(rep.hat.flow);
  const auto& f = rep.flow;
  r["rotation_flow"] = {{"length", to_string(f.length)},
                        {"alpha", to_string(f.alpha)},
                        {"beta1", to_string(f.beta1)},
                        {"beta2", to_string(f.beta2)},
                        {"right_side", f.right_side},
                        {"roof", to_json(f.roof)},
                        {"d_beta1", to_json(f.d_beta1)},
                        {"d_beta2", to_json(f.d_beta2)},
                        {"d_zero", to_json(f.d_zero)},
                        {"d_back", to_json(f.d_back)}};
  json quot = json::array();
  for (const auto& q : rep.cf.quotients()) quot.push_back(q.str());
  r["continued_fraction"] = {{"quotients", quot}, {"alpha", to_string(rep.cf.alpha())}};
  r["rigidity_indices"] = rep.rigidity;
  r["jumps_independent"] = rep.jumps_independent;
  json an = {{"index", a.index},
             {"q", a.q.str()},
             {"delta", to_string(a.delta)},
             {"epsilon", to_string(a.epsilon)},
             {"beta1_in_V", a.beta1_in_V},
             {"beta2_in_W", a.beta2_in_W},
             {"swapped", a.swapped},
             {"membership", a.membership},
             {"exact", a.exact},
             {"forward_normalized", to_json(a.forward_normalized)},
             {"backward_normalized", to_json(a.backward_normalized)},
             {"backward_method", a.backward_method},
             {"max_mass_error", tagged(a.max_mass_error)},
             {"forward_matches_prediction", a.forward_matches_prediction},
             {"backward_is_negation", a.backward_is_negation},
             {"dominant_forward", locations(a.dominant_forward)},
             {"dominant_backward", locations(a.dominant_backward)}};
  if (a.exact) {
    an["forward"] = to_json(a.forward);
    an["backward"] = to_json(a.backward);
  }
  AtomicMeasure predicted{a.predicted};
  an["predicted"] = to_json(predicted);
  r["analysis"] = an;
  r["verdicts"] = {{"weak_mixing", {{"verdict", to_string(rep.verdict.weak_mixing)},
                                    {"reason", rep.verdict.weak_mixing_reason}}},
                   {"disjointness", {{"verdict", to_string(rep.verdict.disjointness)},
                                     {"reason", rep.verdict.disjointness_reason}}}};
  if (!opt.emit_distribution.empty()) emit_text(opt.emit_distribution, distribution_csv(a));
  emit(ctx, r);
  return 0;
}

} // namespace ietflow::cli
