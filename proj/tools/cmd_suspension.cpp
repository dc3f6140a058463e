#include "commands.hpp"

#include <sstream>

namespace ietflow::cli {

namespace {

json theta_json(const ThetaCheck& t) {
  return {{"ok", t.ok}, {"violation", t.ok ? json(nullptr) : json(t.violation)}};
}

std::string vertices_csv(const PolygonModel& m) {
  std::ostringstream out;
  out << "label,x,y,y_decimal,top\n";
  for (size_t i = 0; i < m.points.size(); ++i) {
    const auto& p = m.points[i];
    out << csv_field(p.label()) << ',' << to_string(p.x) << ',' << csv_field(to_string(p.y)) << ','
        << to_decimal(m.y_numeric(static_cast<int>(i)), 30) << ',' << (p.top ? 1 : 0) << '\n';
  }
  return out.str();
}

SuspensionDatum load(const std::string& path) { return suspension_from(read_json(path)); }

} // namespace

int suspend(const Context& ctx, const std::string& datum_path, const std::string& polygon_csv) {
  auto s = load(datum_path);
  json r;
  r["manifest"] = manifest("suspend", {{"datum", to_json(s)}});
  r["datum"] = to_json(s);
  auto theta = validate_theta(s);
  r["theta"] = theta_json(theta);
  if (!theta.ok) {
    emit(ctx, r);
    std::cerr << "error: Theta condition violated: " << theta.violation << "\n";
    return 1;
  }
  auto f = to_flow(s);
  r["flow"] = to_json(f);
  r["area"] = to_json(area(f.lambda, f.h));
  auto model = polygon_vertices(s);
  r["polygon_area"] = to_json(model.polygon_area());
  json verts = json::array();
  for (size_t i = 0; i < model.points.size(); ++i) {
    const auto& p = model.points[i];
    verts.push_back({{"label", p.label()},
                     {"x", to_string(p.x)},
                     {"y", to_json(p.y)},
                     {"y_numeric", tagged(model.y_numeric(static_cast<int>(i)))}});
  }
  r["vertices"] = verts;
  if (!polygon_csv.empty()) emit_text(polygon_csv, vertices_csv(model));
  emit(ctx, r);
  return 0;
}

int rv(const Context& ctx, const std::string& datum_path, const std::string& side, size_t steps) {
  auto s = load(datum_path);
  json r;
  r["manifest"] = manifest("rv", {{"datum", to_json(s)}, {"side", side}, {"steps", steps}});
  auto theta = validate_theta(s);
  if (!theta.ok) throw DomainError("Theta condition violated: " + theta.violation);
  const QVector a0 = area(s.lambda, to_flow(s).h);
  json list = json::array();
  for (size_t k = 1; k <= steps; ++k) {
    s = side == "right" ? polygonal_rv_right(s) : polygonal_rv_left(s);
    auto f = to_flow(s);
    QVector ak = area(f.lambda, f.h);
    auto t = validate_theta(s);
    list.push_back({{"step", k},
                    {"datum", to_json(s)},
                    {"area", to_json(ak)},
                    {"area_preserved", ak == a0},
                    {"theta", theta_json(t)}});
    if (ak != a0) throw std::logic_error("area changed at step " + std::to_string(k));
  }
  r["initial_area"] = to_json(a0);
  r["steps"] = list;
  emit(ctx, r);
  return 0;
}

int triangulate_cmd(const Context& ctx, const std::string& datum_path, const std::string& csv) {
  auto s = load(datum_path);
  auto theta = validate_theta(s);
  if (!theta.ok) throw DomainError("Theta condition violated: " + theta.violation);
  auto t = triangulate(polygon_vertices(s));
  json r;
  r["manifest"] = manifest("triangulate", {{"datum", to_json(s)}});
  json list = json::array();
  QVector total(s.basis.dim());
  for (size_t i = 0; i < t.triangles.size(); ++i) {
    json labels = json::array();
    for (int v : t.triangles[i]) labels.push_back(t.model.points[v].label());
    QVector a = t.triangle_area(i);
    total += a;
    list.push_back({{"index", i}, {"vertices", labels}, {"area", to_json(a)}});
  }
  r["triangles"] = list;
  r["total_area"] = to_json(total);
  r["polygon_area"] = to_json(t.model.polygon_area());
  r["areas_match"] = total == t.model.polygon_area();
  if (!csv.empty()) emit_text(csv, vertices_csv(t.model));
  emit(ctx, r);
  return 0;
}

} // namespace ietflow::cli
