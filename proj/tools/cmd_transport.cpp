#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace ietflow::cli {

namespace {

using Clock = std::chrono::steady_clock;

template <class T>
json matrix_json(const Affine<T>& f) {
  auto s = [](const T& x) {
    if constexpr (std::is_same_v<T, Rational>) return to_string(x);
    else return decimal(x);
  };
  json m = json::array({json::array({s(f.m[0][0]), s(f.m[0][1])}), json::array({s(f.m[1][0]), s(f.m[1][1])})});
  return {{"matrix", m}, {"translation", json::array({s(f.t[0]), s(f.t[1])})}};
}

template <class T>
json piece_json(const Triangle<T>& domain, const Affine<T>& f) {
  json j = matrix_json(f);
  j["triangle"] = json::array({to_json(domain[0]), to_json(domain[1]), to_json(domain[2])});
  return j;
}

// Pieces of one bisection stage written in the coordinates given by outer.
void stage_pieces(const std::vector<TransportNode>& nodes, const Affine<Num>& outer, json& out) {
  for (const auto& node : nodes) {
    Affine<Num> F = outer.after(node.frame);
    Affine<Num> Finv = F.inverse();
    for (int i = 0; i < 6; ++i) {
      if (area(node.H.C[i]) == 0) continue;
      out.push_back(piece_json(map_triangle(F, node.H.C[i]), F.after(node.H.piece[i]).after(Finv)));
    }
  }
}

Num to_ld(const json& j) { return to_long_double(rational_from(j)); }

std::filesystem::path resolve(const std::string& config, const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_absolute()) return p;
  return std::filesystem::path(config).parent_path() / p;
}

// Imported cells must tile V without overlap and respect the density bounds.
void check_partition(std::vector<DensityCell>& cells, Num a, Num eps_hat) {
  const auto V = canonical_V(a);
  const Num tol = 1e-12L * a * a;
  Num covered = 0;
  for (size_t k = 0; k < cells.size(); ++k) {
    for (const auto& p : cells[k].shape)
      if (!in_triangle(V, p, 1e-12L * a))
        throw DomainError("density cell " + std::to_string(k) + " leaves V");
    covered += area(cells[k].shape);
  }
  for (size_t k = 0; k < cells.size(); ++k)
    for (size_t l = k + 1; l < cells.size(); ++l) {
      auto o = clip(cells[k].shape, cells[l].shape);
      if (!o.empty() && area(o) > tol)
        throw DomainError("density cells " + std::to_string(k) + " and " + std::to_string(l) + " overlap");
    }
  if (std::fabs(covered - a * a) > tol) throw DomainError("density cells do not cover V");
  Num mass = cell_mass(cells);
  if (std::fabs(mass - a * a) > tol)
    throw DomainError("normalization: integral of f differs from Leb(V) by more than 1e-12 Leb(V)");
  for (auto& c : cells) c.value *= a * a / mass;
  for (size_t k = 0; k < cells.size(); ++k) {
    if (!(cells[k].value * (1 + eps_hat) > 1))
      throw DomainError("density bound f > 1/(1 + eps_hat) violated on cell " + std::to_string(k));
    if (!(cells[k].value * (1 - eps_hat) < 1))
      throw DomainError("density bound f < 1/(1 - eps_hat) violated on cell " + std::to_string(k));
  }
}

struct Loaded {
  json config;
  Rational eps_hat;
  size_t depth;
  Rational tolerance;
};

int run_triangle(const Context& ctx, const TransportOptions& opt, const Loaded& in, json& manifest_params) {
  const json& j = in.config;
  Num a = j.contains("a") ? to_ld(j.at("a")) : 1.0L;
  if (!(a > 0)) throw UsageError("a must be positive");
  Num eps_hat = to_long_double(in.eps_hat);
  json seeds = json::object();
  std::vector<DensityCell> cells;
  const json d = j.value("density", json("uniform"));
  if (d == "uniform") {
    cells = {{as_polygon(canonical_V(a)), 1}};
  } else if (d.is_object() && d.contains("random")) {
    const auto& r = d.at("random");
    size_t lines = r.value("lines", size_t(20));
    unsigned long long seed = r.value("seed", 1ull);
    Num spread = to_ld(r.value("spread", json("1/4"))) * eps_hat;
    cells = random_density(a, spread, lines, seed);
    seeds["density"] = seed;
  } else if (d.is_object() && (d.contains("cells") || d.contains("file"))) {
    json src = d.contains("file") ? read_json(resolve(opt.config, d.at("file").get<std::string>()).string()) : d;
    cells = density_from(src);
    check_partition(cells, a, eps_hat);
  } else {
    throw UsageError("density must be \"uniform\", {\"random\": ...}, {\"cells\": ...} or {\"file\": ...}");
  }

  auto t0 = Clock::now();
  auto t = bisection_transport(cells, a, eps_hat, in.depth, ctx.jobs);
  auto t1 = Clock::now();
  if (ctx.verbose) std::cerr << "transport: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  json r;
  r["manifest"] = manifest("transport run", manifest_params, seeds);
  r["mode"] = "triangle";
  r["a"] = decimal(a);
  r["eps"] = tagged(t.eps);
  Num lo = cells.front().value, hi = lo;
  for (const auto& c : cells) {
    lo = std::min(lo, c.value);
    hi = std::max(hi, c.value);
  }
  r["density"] = {{"cells", cells.size()}, {"min", tagged(lo)}, {"max", tagged(hi)}, {"mass", tagged(cell_mass(cells))}};
  json levels = json::array();
  Num worst = 0;
  std::ostringstream csv;
  csv << "depth,index,leb,pushforward,relative_residual\n";
  for (size_t n = 0; n < t.level_mass.size(); ++n) {
    levels.push_back({{"depth", n}, {"triangles", t.level_mass[n].size()}, {"max_relative_residual", tagged(t.level_residual[n])}});
    worst = std::max(worst, t.level_residual[n]);
    Num leb = t.level_area(n);
    for (size_t k = 0; k < t.level_mass[n].size(); ++k)
      csv << n << ',' << k << ',' << decimal(leb) << ',' << decimal(t.level_mass[n][k]) << ','
          << decimal(std::fabs(t.level_mass[n][k] - leb) / leb) << '\n';
  }
  r["levels"] = levels;
  r["max_relative_residual"] = tagged(worst);
  r["max_lipschitz"] = tagged(t.max_lipschitz);
  r["max_abs_h"] = tagged(t.max_abs_h);
  bool ok = worst <= to_long_double(in.tolerance);
  r["within_tolerance"] = ok;
  if (!opt.residuals.empty()) emit_text(opt.residuals, csv.str());
  if (!opt.homeo.empty()) {
    size_t stages = std::min(opt.homeo_depth.value_or(t.stages.size()), t.stages.size());
    json list = json::array();
    for (size_t n = 0; n < stages; ++n) {
      json pieces = json::array();
      stage_pieces(t.stages[n], Affine<Num>{}, pieces);
      list.push_back({{"stage", n}, {"pieces", pieces}});
    }
    json h = {{"manifest", r["manifest"]},
              {"precision", {{"bits", std::numeric_limits<Num>::digits}}},
              {"composition", "stage 0 first"},
              {"stages", list}};
    emit_text(opt.homeo, h.dump(1) + "\n");
  }
  emit(ctx, r);
  if (!ok) {
    std::cerr << "error: residual bound |mass - Leb| <= tolerance * Leb violated\n";
    return 1;
  }
  return 0;
}

int run_surface(const Context& ctx, const TransportOptions& opt, const Loaded& in, json& manifest_params) {
  const json& j = in.config;
  if (!j.contains("suspension")) throw UsageError("surface mode needs \"suspension\"");
  auto s = suspension_from(j.at("suspension"));
  auto theta = validate_theta(s);
  if (!theta.ok) throw DomainError("Theta condition violated: " + theta.violation);
  auto tri = triangulate(polygon_vertices(s));
  auto layout = layout_surface(surface_triangles(tri));
  const size_t m = layout.triangles.size();

  json seeds = json::object();
  std::vector<Rational> f;
  const json d = j.value("density", json("uniform"));
  if (d == "uniform") {
    f.assign(m, Rational(1));
  } else if (d.is_object() && d.contains("perturbed")) {
    unsigned long long seed = d.at("perturbed").value("seed", 1ull);
    f = perturbed_density(layout, in.eps_hat, seed);
    seeds["density"] = seed;
  } else if (d.is_object() && d.contains("values")) {
    for (const auto& x : d.at("values")) f.push_back(rational_from(x));
    if (f.size() != m) throw UsageError("density values: expected " + std::to_string(m) + " entries");
  } else {
    throw UsageError("density must be \"uniform\", {\"perturbed\": ...} or {\"values\": [...]}");
  }

  auto t0 = Clock::now();
  auto st = surface_transport(layout, f, in.eps_hat, in.depth, ctx.jobs);
  auto t1 = Clock::now();
  if (ctx.verbose) std::cerr << "transport: " << std::chrono::duration<double>(t1 - t0).count() << " s\n";

  json r;
  r["manifest"] = manifest("transport run", manifest_params, seeds);
  r["mode"] = "surface";
  r["eps"] = to_string(st.eps);
  json tris = json::array();
  Rational leb_total = 0, corridor_total = 0;
  Num final_total = 0, worst = 0;
  std::ostringstream csv;
  csv << "triangle,depth,max_relative_residual\n";
  for (size_t i = 0; i < m; ++i) {
    const auto& T = layout.triangles[i];
    Rational leb = area(T);
    leb_total += leb;
    corridor_total += st.mass_after_corridors[i];
    final_total += st.final_mass[i];
    Num res = std::fabs(st.final_mass[i] - to_long_double(leb)) / to_long_double(leb);
    worst = std::max(worst, res);
    json tj = {{"index", i},
               {"vertices", json::array({to_json(T[0]), to_json(T[1]), to_json(T[2])})},
               {"leb", to_string(leb)},
               {"parent", layout.parent[i] ? json(*layout.parent[i]) : json(nullptr)},
               {"density", to_string(st.density[i])},
               {"v", to_string(st.v[i])},
               {"h", to_string(st.h[i])},
               {"mass_after_corridors", to_string(st.mass_after_corridors[i])},
               {"corridor_mass_exact", st.mass_after_corridors[i] == leb},
               {"pushforward_mass", tagged(st.final_mass[i])},
               {"relative_residual", tagged(res)}};
    if (layout.corridor[i]) tj["corridor"] = {{"lower", layout.corridor[i]->lower},
                                              {"upper", layout.corridor[i]->upper},
                                              {"scale", to_string(layout.corridor[i]->scale)}};
    tris.push_back(tj);
    const auto& lv = st.second[i].level_residual;
    for (size_t n = 0; n < lv.size(); ++n) csv << i << ',' << n << ',' << decimal(lv[n]) << '\n';
  }
  r["triangles"] = tris;
  r["global"] = {{"leb", to_string(leb_total)},
                 {"mass_after_corridors", to_string(corridor_total)},
                 {"conserved_exactly", corridor_total == leb_total},
                 {"pushforward_mass", tagged(final_total)}};
  r["max_relative_residual"] = tagged(worst);
  r["max_leaf_residual"] = tagged(st.max_leaf_residual);
  bool ok = worst <= to_long_double(in.tolerance) && st.max_leaf_residual <= to_long_double(in.tolerance);
  r["within_tolerance"] = ok;
  if (!opt.residuals.empty()) emit_text(opt.residuals, csv.str());
  if (!opt.homeo.empty()) {
    json corridor = json::array();
    for (size_t i = 0; i < m; ++i) {
      if (!layout.corridor[i]) continue;
      const auto& F = layout.corridor[i]->frame;
      const auto& H = *st.corridor_map[i];
      Affine<Rational> Finv = F.inverse();
      for (int p = 0; p < 6; ++p) {
        if (area(H.C[p]) == 0) continue;
        corridor.push_back(piece_json(map_triangle(F, H.C[p]), F.after(H.piece[p]).after(Finv)));
      }
    }
    json stages = json::array();
    stages.push_back({{"stage", "corridors"}, {"precision", "exact"}, {"pieces", corridor}});
    size_t depth = std::min(opt.homeo_depth.value_or(in.depth), in.depth);
    for (size_t n = 0; n < depth; ++n) {
      json pieces = json::array();
      for (size_t i = 0; i < m; ++i) stage_pieces(st.second[i].stages[n], st.frames[i], pieces);
      stages.push_back({{"stage", n}, {"precision", {{"bits", std::numeric_limits<Num>::digits}}}, {"pieces", pieces}});
    }
    json h = {{"manifest", r["manifest"]}, {"composition", "corridors first, then stages 0, 1, ..."}, {"stages", stages}};
    emit_text(opt.homeo, h.dump(1) + "\n");
  }
  emit(ctx, r);
  if (!ok) {
    std::cerr << "error: residual bound |mass - Leb| <= tolerance * Leb violated\n";
    return 1;
  }
  return 0;
}

} // namespace

int transport_run(const Context& ctx, const TransportOptions& opt) {
  Loaded in;
  in.config = read_json(opt.config);
  const json& j = in.config;
  if (!j.is_object()) throw UsageError("transport config must be a JSON object");
  std::string mode = j.value("mode", std::string("triangle"));
  if (mode != "triangle" && mode != "surface") throw UsageError("mode must be \"triangle\" or \"surface\"");
  if (!j.contains("eps_hat")) throw UsageError("transport config needs \"eps_hat\"");
  in.eps_hat = rational_from(j.at("eps_hat"));
  if (!(in.eps_hat > 0 && in.eps_hat < Rational(1, 100000000)))
    throw DomainError("eps_hat bound 0 < eps_hat < 1e-8 violated");
  in.depth = opt.depth.value_or(j.value("depth", size_t(12)));
  if (in.depth < 1 || in.depth > 24) throw UsageError("depth must lie in 1..24");
  in.tolerance = rational_from(j.value("tolerance", json("1e-9")));

  json params = j;
  params["depth"] = in.depth;
  params["eps_hat"] = to_string(in.eps_hat);
  params["tolerance"] = to_string(in.tolerance);
  params["mode"] = mode;
  if (!opt.homeo.empty()) params["homeo_depth"] = opt.homeo_depth.value_or(in.depth);
  return mode == "triangle" ? run_triangle(ctx, opt, in, params) : run_surface(ctx, opt, in, params);
}

} // namespace ietflow::cli
