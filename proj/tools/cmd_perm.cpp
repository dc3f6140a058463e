#include "commands.hpp"

namespace ietflow::cli {

namespace {

LabeledPermutation read_perm(const std::string& text) { return permutation_from(json(text)); }

json symbols_json(const LabeledPermutation& p, const AcceptableSymbols& s) {
  const auto& a = p.alphabet();
  return {{"alpha1", a[s.alpha1]}, {"alpha2", a[s.alpha2]}, {"gamma1", a[s.gamma1]}, {"gamma2", a[s.gamma2]}};
}

// Acceptable symbols or the reason there are none.
json acceptable_json(const LabeledPermutation& p) {
  try {
    auto s = find_acceptable_symbols(p);
    if (!s) return {{"found", false}};
    return {{"found", true}, {"symbols", symbols_json(p, *s)}, {"verified", satisfies_acceptable(p, *s)}};
  } catch (const DomainError& e) {
    return {{"found", false}, {"reason", e.what()}};
  }
}

std::string key_text(const SigmaKey& k) {
  std::string s;
  for (int v : k) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

json class_json(const std::vector<SigmaKey>& cls, bool list_members) {
  json j;
  j["size"] = cls.size();
  j["representative"] = key_text(cls.front());
  auto sym = std::find_if(cls.begin(), cls.end(),
                          [](const SigmaKey& k) { return is_symmetric(LabeledPermutation::from_sigma(k)); });
  j["symmetric_member"] = sym == cls.end() ? json(nullptr) : json(key_text(*sym));
  auto deg = degeneracy(LabeledPermutation::from_sigma(cls.front()));
  j["degenerate"] = deg.has_value();
  j["degeneracy"] = deg ? json(to_string(*deg)) : json(nullptr);
  if (list_members) {
    json m = json::array();
    for (const auto& k : cls) m.push_back(key_text(k));
    j["members"] = m;
  }
  return j;
}

} // namespace

int perm_classify(const Context& ctx, const std::string& text) {
  auto p = read_perm(text);
  json r;
  r["manifest"] = manifest("perm classify", {{"permutation", text}});
  r["permutation"] = to_json(p);
  r["sigma"] = p.sigma_text();
  r["d"] = p.d();
  bool irr = is_irreducible(p);
  r["irreducible"] = irr;
  r["symmetric"] = is_symmetric(p);
  auto deg = irr ? degeneracy(p) : std::nullopt;
  r["degenerate"] = irr ? json(deg.has_value()) : json(nullptr);
  r["degeneracy"] = deg ? json(to_string(*deg)) : json(nullptr);
  r["pierost"] = is_pierost(p);
  r["omega"] = translation_matrix(p);
  r["acceptable"] = acceptable_json(p);
  emit(ctx, r);
  return 0;
}

int perm_class(const Context& ctx, const std::optional<std::string>& text, std::optional<size_t> d,
               std::optional<size_t> d_max, bool extended, size_t cap) {
  json r;
  json params = {{"extended", extended}, {"cap", cap}};
  if (text) {
    params["permutation"] = *text;
    r["manifest"] = manifest("perm class", params);
    auto p = read_perm(*text);
    if (!is_irreducible(p)) throw DomainError("Rauzy classes are defined for irreducible permutations");
    r["class"] = class_json(rauzy_class(p, extended, cap), true);
    emit(ctx, r);
    return 0;
  }
  size_t lo = d ? *d : 2, hi = d ? *d : *d_max;
  if (lo < 2 || hi > 10) throw UsageError("class enumeration supports 2 <= d <= 10");
  params["d_min"] = lo;
  params["d_max"] = hi;
  r["manifest"] = manifest("perm class", params);
  bool all = true;
  json sizes = json::array();
  for (size_t n = lo; n <= hi; ++n) {
    auto classes = all_rauzy_classes(n, extended, cap);
    json list = json::array();
    for (const auto& c : classes) {
      auto cj = class_json(c, false);
      if (!cj["degenerate"].get<bool>() && cj["symmetric_member"].is_null()) all = false;
      list.push_back(cj);
    }
    sizes.push_back({{"d", n}, {"classes", list}});
  }
  r["by_d"] = sizes;
  r["every_nondegenerate_class_has_symmetric_member"] = all;
  emit(ctx, r);
  return 0;
}

int perm_acceptable(const Context& ctx, const std::string& text) {
  auto p = read_perm(text);
  json r;
  r["manifest"] = manifest("perm acceptable", {{"permutation", text}});
  r["permutation"] = to_json(p);
  r["acceptable"] = acceptable_json(p);
  emit(ctx, r);
  return 0;
}

} // namespace ietflow::cli
