#include "ietflow/suspension.hpp"

#include <algorithm>
#include <map>

namespace ietflow {

std::string PolygonPoint::label() const {
  static const char* names[] = {"R", "R'", "Q", "Q'", "S", "S'"};
  return std::string(names[static_cast<int>(kind)]) + std::to_string(index);
}

Real PolygonModel::y_numeric(int i) const { return evaluate_numeric(points[i].y, datum.basis); }

int PolygonModel::rp_index(int i) const {
  int d = static_cast<int>(datum.perm.d());
  if (i == 0) return 0;
  if (i == d) return d;
  return d + i;
}

QVector PolygonModel::polygon_area() const {
  int d = static_cast<int>(datum.perm.d());
  std::vector<int> ring;
  for (int i = 0; i <= d; ++i) ring.push_back(rp_index(i));
  for (int i = d - 1; i >= 1; --i) ring.push_back(r_index(i));
  QVector twice(datum.basis.dim());
  for (size_t k = 0; k < ring.size(); ++k) {
    const auto& a = points[ring[k]];
    const auto& b = points[ring[(k + 1) % ring.size()]];
    twice += b.y * a.x - a.y * b.x;
  }
  return twice * Rational(1, 2);
}

namespace {

struct Side {
  Rational x0, x1;
  QVector y0;
  int sym;
};

// Side of a row whose open x-range contains x.
const Side& side_at(const std::vector<Side>& row, const Rational& x) {
  for (const auto& s : row)
    if (x > s.x0 && x < s.x1) return s;
  throw DomainError("possible vertical saddle connection: projection hits a vertex");
}

QVector height_on(const Side& s, const Rational& x, const SuspensionDatum& d) {
  return s.y0 + d.tau[s.sym] * ((x - s.x0) / d.lambda[s.sym]);
}

} // namespace

PolygonModel polygon_vertices(const SuspensionDatum& s) {
  auto theta = validate_theta(s);
  if (!theta.ok) throw DomainError("polygon: datum outside Theta: " + theta.violation);
  const auto& p = s.perm;
  int d = static_cast<int>(p.d());
  size_t dim = s.basis.dim();
  PolygonModel m;
  m.datum = s;

  std::vector<Side> top, bottom;
  std::vector<Rational> rx(d + 1), rpx(d + 1);
  std::vector<QVector> ry(d + 1, QVector(dim)), rpy(d + 1, QVector(dim));
  for (int i = 0; i < d; ++i) {
    int a = p.top(i), b = p.bottom(i);
    top.push_back({rx[i], rx[i] + s.lambda[a], ry[i], a});
    bottom.push_back({rpx[i], rpx[i] + s.lambda[b], rpy[i], b});
    rx[i + 1] = rx[i] + s.lambda[a];
    ry[i + 1] = ry[i] + s.tau[a];
    rpx[i + 1] = rpx[i] + s.lambda[b];
    rpy[i + 1] = rpy[i] + s.tau[b];
  }
  if (!(ry[d] == rpy[d])) throw DomainError("polygon: rows do not close");

  for (int i = 0; i <= d; ++i) m.points.push_back({VertexKind::R, i, rx[i], ry[i], true});
  for (int i = 1; i < d; ++i) m.points.push_back({VertexKind::Rp, i, rpx[i], rpy[i], false});

  // Offset from a bottom side to the matching top side.
  auto shift = [&](int sym) {
    return std::make_pair(rx[p.pos0(sym)] - rpx[p.pos1(sym)], ry[p.pos0(sym)] - rpy[p.pos1(sym)]);
  };
  std::vector<PolygonPoint> q, qp, sv, spv;
  for (int i = 1; i < d; ++i) {
    const Side& b = side_at(bottom, rx[i]);
    QVector y = height_on(b, rx[i], s);
    q.push_back({VertexKind::Q, i, rx[i], y, false});
    auto [dx, dy] = shift(b.sym);
    sv.push_back({VertexKind::S, i, rx[i] + dx, y + dy, true});
  }
  for (int i = 1; i < d; ++i) {
    const Side& t = side_at(top, rpx[i]);
    QVector y = height_on(t, rpx[i], s);
    qp.push_back({VertexKind::Qp, i, rpx[i], y, true});
    auto [dx, dy] = shift(t.sym);
    spv.push_back({VertexKind::Sp, i, rpx[i] - dx, y - dy, false});
  }
  for (auto* v : {&q, &qp, &sv, &spv}) m.points.insert(m.points.end(), v->begin(), v->end());

  for (int i = 0; i < static_cast<int>(m.points.size()); ++i) {
    auto k = m.points[i].kind;
    if (k == VertexKind::R || k == VertexKind::Rp || k == VertexKind::S || k == VertexKind::Sp)
      m.order.push_back(i);
  }
  std::stable_sort(m.order.begin(), m.order.end(),
                   [&](int a, int b) { return m.points[a].x < m.points[b].x; });
  for (size_t k = 1; k < m.order.size(); ++k)
    if (m.points[m.order[k]].x == m.points[m.order[k - 1]].x)
      throw DomainError("possible vertical saddle connection: " + m.points[m.order[k - 1]].label() +
                        " and " + m.points[m.order[k]].label() + " share an abscissa");
  return m;
}

QVector Triangulation::triangle_area(size_t t) const {
  const auto& a = model.points[triangles[t][0]];
  const auto& b = model.points[triangles[t][1]];
  const auto& c = model.points[triangles[t][2]];
  QVector cross = (c.y - a.y) * (b.x - a.x) - (b.y - a.y) * (c.x - a.x);
  return cross * Rational(1, 2);
}

namespace {

class Builder {
public:
  explicit Builder(Triangulation& t) : t_(t) {}

  void add(int a, int b, int c) {
    const auto& pa = t_.model.points[a];
    const auto& pb = t_.model.points[b];
    const auto& pc = t_.model.points[c];
    QVector cross = (pc.y - pa.y) * (pb.x - pa.x) - (pb.y - pa.y) * (pc.x - pa.x);
    int sg = certified_sign(cross, t_.model.datum.basis);
    if (sg == 0)
      throw DomainError("degenerate triangle " + pa.label() + " " + pb.label() + " " + pc.label());
    if (sg > 0) t_.triangles.push_back({a, b, c});
    else t_.triangles.push_back({a, c, b});
  }

  void fan(int apex, const std::vector<int>& chain, size_t from) {
    for (size_t j = from; j + 1 < chain.size(); ++j) add(apex, chain[j], chain[j + 1]);
  }

  // Chains start at the shared apex and move away from it.
  void cap(const std::vector<int>& top, const std::vector<int>& bottom) {
    const auto& pts = t_.model.points;
    const Rational& apex_x = pts[top[0]].x;
    auto dist = [&](int i) { return abs(pts[i].x - apex_x); };
    bool first_top = dist(top[1]) < dist(bottom[1]);
    if (first_top) {
      fan(top[1], bottom, 0);
      fan(bottom.back(), top, 1);
    } else {
      fan(bottom[1], top, 0);
      fan(top.back(), bottom, 1);
    }
  }

  void trapezoid(const std::vector<int>& top, const std::vector<int>& bottom) {
    fan(bottom.back(), top, 0);
    fan(top.front(), bottom, 0);
  }

private:
  Triangulation& t_;
};

} // namespace

Triangulation triangulate(const PolygonModel& model) {
  Triangulation t{model, {}};
  const auto& pts = model.points;
  int d = static_cast<int>(model.datum.perm.d());
  std::vector<int> top_pts, bottom_pts;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i].top) top_pts.push_back(i);
    else bottom_pts.push_back(i);
  }
  bottom_pts.push_back(model.r_index(0));
  bottom_pts.push_back(model.r_index(d));
  auto by_x = [&](int a, int b) { return pts[a].x < pts[b].x; };
  std::sort(top_pts.begin(), top_pts.end(), by_x);
  std::sort(bottom_pts.begin(), bottom_pts.end(), by_x);

  std::vector<Rational> cuts{pts[model.r_index(0)].x};
  for (int i = 1; i < d; ++i) {
    cuts.push_back(pts[model.r_index(i)].x);
    cuts.push_back(pts[model.rp_index(i)].x);
  }
  cuts.push_back(pts[model.r_index(d)].x);
  std::sort(cuts.begin(), cuts.end());

  auto slice = [&](const std::vector<int>& row, const Rational& lo, const Rational& hi) {
    std::vector<int> out;
    for (int i : row)
      if (pts[i].x >= lo && pts[i].x <= hi) out.push_back(i);
    return out;
  };

  Builder b(t);
  size_t pieces = cuts.size() - 1;
  for (size_t k = 0; k < pieces; ++k) {
    auto top = slice(top_pts, cuts[k], cuts[k + 1]);
    auto bottom = slice(bottom_pts, cuts[k], cuts[k + 1]);
    if (k == 0) {
      b.cap(top, bottom);
    } else if (k + 1 == pieces) {
      std::reverse(top.begin(), top.end());
      std::reverse(bottom.begin(), bottom.end());
      b.cap(top, bottom);
    } else {
      b.trapezoid(top, bottom);
    }
  }
  return t;
}

Matrix2 affine_comparison(const Triangulation& a, const Triangulation& b, size_t t) {
  if (!(a.model.datum.perm == b.model.datum.perm) || a.triangles != b.triangles ||
      a.model.points.size() != b.model.points.size())
    throw DomainError("affine comparison: triangulations are not combinatorially identical");
  for (size_t k = 0; k < a.model.order.size(); ++k)
    if (a.model.order[k] != b.model.order[k])
      throw DomainError("affine comparison: vertex orderings differ");
  if (t >= a.triangles.size()) throw DomainError("affine comparison: triangle index out of range");
  auto [j, k, l] = a.triangles[t];
  auto re = [](const Triangulation& tr, int u, int v) {
    return to_real(tr.model.points[u].x - tr.model.points[v].x);
  };
  auto im = [](const Triangulation& tr, int u, int v) {
    return evaluate_numeric(tr.model.points[u].y - tr.model.points[v].y, tr.model.datum.basis);
  };
  Real rk = re(a, k, j), rl = re(a, l, j), ik = im(a, k, j), il = im(a, l, j);
  Real brk = re(b, k, j), brl = re(b, l, j), bik = im(b, k, j), bil = im(b, l, j);
  Real det = rk * il - rl * ik;
  Matrix2 m;
  m[0][0] = (brk * il - brl * ik) / det;
  m[0][1] = (brl * rk - brk * rl) / det;
  m[1][0] = (bik * il - bil * ik) / det;
  m[1][1] = (rk * bil - rl * bik) / det;
  return m;
}

} // namespace ietflow
