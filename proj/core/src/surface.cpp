#include "ietflow/transport.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace ietflow {

namespace {

bool strictly_inside(const Triangle<Rational>& t0, const Point<Rational>& p) {
  Triangle<Rational> t = ccw(t0);
  for (int e = 0; e < 3; ++e)
    if (cross(t[e], t[(e + 1) % 3], p) <= 0) return false;
  return true;
}

struct SharedEdge {
  Point<Rational> p, q;
};

std::optional<SharedEdge> shared_edge(const Triangle<Rational>& a, const Triangle<Rational>& b) {
  std::vector<Point<Rational>> common;
  for (const auto& u : a)
    for (const auto& w : b)
      if (u == w) common.push_back(u);
  if (common.size() != 2) return std::nullopt;
  return SharedEdge{common[0], common[1]};
}

Point<Rational> opposite(const Triangle<Rational>& t, const SharedEdge& e) {
  for (const auto& u : t)
    if (!(u == e.p) && !(u == e.q)) return u;
  throw DomainError("surface layout: degenerate triangle");
}

Corridor make_corridor(const SurfaceLayout& L, size_t i, const Rational& r) {
  size_t k = *L.parent[i];
  SharedEdge e = *shared_edge(L.triangles[i], L.triangles[k]);
  Point<Rational> d{e.q.x - e.p.x, e.q.y - e.p.y};
  Point<Rational> n{-d.y, d.x};
  Point<Rational> o = opposite(L.triangles[i], e);
  // -n must point into U_i, where the vertex (0, -1) goes.
  if ((o.x - e.p.x) * n.x + (o.y - e.p.y) * n.y > 0) n = {-n.x, -n.y};
  Corridor c;
  c.lower = i;
  c.upper = k;
  Rational start = (Rational(1) - r) / 2;
  c.frame.m = {{{r * d.x, r * n.x}, {r * d.y, r * n.y}}};
  c.frame.t = {e.p.x + start * d.x, e.p.y + start * d.y};
  c.scale = abs(c.frame.det());
  return c;
}

bool corridor_fits(const SurfaceLayout& L, const Corridor& c) {
  return strictly_inside(L.triangles[c.lower], c.frame(Point<Rational>{0, -1})) &&
         strictly_inside(L.triangles[c.upper], c.frame(Point<Rational>{0, 1}));
}

Triangle<Rational> corridor_triangle(const Corridor& c) {
  return map_triangle(c.frame, canonical_V(Rational(1)));
}

const Triangle<Rational> kUpperHalf{Point<Rational>{0, 1}, Point<Rational>{1, 0}, Point<Rational>{0, 0}};
const Triangle<Rational> kLowerHalf{Point<Rational>{0, 0}, Point<Rational>{1, 0}, Point<Rational>{0, -1}};

} // namespace

std::vector<Triangle<Rational>> surface_triangles(const Triangulation& t) {
  auto point = [&](int idx) {
    const auto& p = t.model.points[idx];
    for (size_t b = 1; b < p.y.dim(); ++b)
      if (p.y[b] != 0) throw DomainError("surface transport needs rational heights (basis of dimension 1)");
    return Point<Rational>{p.x, p.y.dim() ? p.y[0] : Rational(0)};
  };
  std::vector<Triangle<Rational>> out;
  for (const auto& tri : t.triangles) out.push_back({point(tri[0]), point(tri[1]), point(tri[2])});
  return out;
}

SurfaceLayout layout_surface(const std::vector<Triangle<Rational>>& triangles) {
  SurfaceLayout L;
  L.triangles = triangles;
  const size_t m = triangles.size();
  if (m == 0) throw DomainError("surface layout: no triangles");
  for (const auto& t : triangles)
    if (cross(t[0], t[1], t[2]) == 0) throw DomainError("surface layout: degenerate triangle");
  L.parent.assign(m, std::nullopt);
  L.corridor.assign(m, std::nullopt);
  std::vector<bool> seen(m, false);
  std::deque<size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    size_t i = queue.front();
    queue.pop_front();
    L.order.push_back(i);
    for (size_t j = 0; j < m; ++j) {
      if (seen[j] || !shared_edge(triangles[i], triangles[j])) continue;
      seen[j] = true;
      L.parent[j] = i;
      queue.push_back(j);
    }
  }
  if (L.order.size() != m) throw DomainError("surface layout: triangulation is not edge-connected");

  // Height a quarter of the shared edge, centred on it, halved until the
  // corridor sits in U_i and U_k(i) and misses every other corridor.
  std::vector<Rational> r(m, Rational(1, 4));
  for (size_t i = 0; i < m; ++i) {
    if (!L.parent[i]) continue;
    while (!corridor_fits(L, make_corridor(L, i, r[i]))) r[i] /= 2;
    L.corridor[i] = make_corridor(L, i, r[i]);
  }
  for (bool again = true; again;) {
    again = false;
    for (size_t i = 0; i < m && !again; ++i) {
      for (size_t j = i + 1; j < m && !again; ++j) {
        if (!L.corridor[i] || !L.corridor[j]) continue;
        auto overlap = clip(as_polygon(corridor_triangle(*L.corridor[i])), corridor_triangle(*L.corridor[j]));
        if (overlap.empty() || area(overlap) == 0) continue;
        r[i] /= 2;
        r[j] /= 2;
        L.corridor[i] = make_corridor(L, i, r[i]);
        L.corridor[j] = make_corridor(L, j, r[j]);
        again = true;
      }
    }
  }
  return L;
}

std::vector<Rational> solve_corridor_system(const SurfaceLayout& L, const std::vector<Rational>& rhs) {
  const size_t m = L.triangles.size();
  if (rhs.size() != m) throw DomainError("corridor system: right-hand side has the wrong size");
  std::vector<Rational> v(m, Rational(0));
  // Children come later in the order, so back substitution suffices.
  for (size_t p = m; p-- > 1;) {
    size_t i = L.order[p];
    Rational s = rhs[i];
    for (size_t j = 0; j < m; ++j)
      if (L.parent[j] && *L.parent[j] == i) s += v[j];
    v[i] = s;
  }
  return v;
}

std::vector<Rational> perturbed_density(const SurfaceLayout& L, const Rational& eps_hat,
                                        unsigned long long seed) {
  const size_t m = L.triangles.size();
  std::mt19937_64 rng(seed);
  const long long half = 1LL << 20;
  std::vector<Rational> u(m), areas(m);
  Rational total = 0, weighted = 0;
  for (size_t i = 0; i < m; ++i) {
    u[i] = Rational(static_cast<long long>(rng() % (2 * half + 1)) - half, half);
    areas[i] = area(L.triangles[i]);
    total += areas[i];
    weighted += areas[i] * u[i];
  }
  Rational mean = weighted / total, widest = 0;
  for (auto& x : u) {
    x -= mean;
    widest = std::max(widest, abs(x));
  }
  std::vector<Rational> f(m, Rational(1));
  if (widest == 0) return f;
  Rational t = eps_hat / (8 * widest);
  for (;;) {
    std::vector<Rational> rhs(m);
    for (size_t i = 0; i < m; ++i) {
      f[i] = 1 + t * u[i];
      rhs[i] = areas[i] - f[i] * areas[i];
    }
    auto v = solve_corridor_system(L, rhs);
    bool ok = true;
    for (size_t i = 0; i < m; ++i)
      if (L.corridor[i] && !(abs(v[i]) < L.corridor[i]->scale * eps_hat / 24)) ok = false;
    if (ok) return f;
    t /= 2;
  }
}

SurfaceTransport surface_transport(const SurfaceLayout& L, const std::vector<Rational>& f,
                                   const Rational& eps_hat, size_t depth, size_t jobs) {
  const size_t m = L.triangles.size();
  if (!(eps_hat > 0 && eps_hat < Rational(1, 100000000)))
    throw DomainError("surface transport: eps_hat must lie in (0, 1e-8)");
  if (f.size() != m) throw DomainError("surface transport: one density value per triangle expected");
  SurfaceTransport out;
  out.eps_hat = eps_hat;
  out.eps = sqrt_rational(eps_hat);
  out.density = f;

  const Rational small = eps_hat / 3;
  std::vector<Rational> areas(m), rhs(m);
  Rational leb = 0, mu = 0;
  for (size_t i = 0; i < m; ++i) {
    areas[i] = area(L.triangles[i]);
    if (!(f[i] * (1 + small) > 1)) throw DomainError("surface transport: density violates f > 1/(1 + eps_hat/3)");
    if (!(f[i] * (1 - small) < 1)) throw DomainError("surface transport: density violates f < 1/(1 - eps_hat/3)");
    leb += areas[i];
    mu += f[i] * areas[i];
    rhs[i] = areas[i] - f[i] * areas[i];
  }
  if (leb != mu) throw DomainError("surface transport: density integral differs from the area");
  out.v = solve_corridor_system(L, rhs);

  out.h.assign(m, Rational(0));
  out.corridor_map.assign(m, std::nullopt);
  out.mass_after_corridors.resize(m);
  for (size_t i = 0; i < m; ++i) out.mass_after_corridors[i] = f[i] * areas[i];
  for (size_t i = 0; i < m; ++i) {
    if (!L.corridor[i]) continue;
    const Corridor& c = *L.corridor[i];
    const Rational& v = out.v[i];
    if (!(abs(v) < c.scale * eps_hat / 12))
      throw DomainError("surface transport: corridor bound |v_i| < a^2 eps_hat / 12 violated");
    const Rational& fl = f[c.lower];
    const Rational& fu = f[c.upper];
    // The triangle between (0,0), (1,0) and y carries v.
    out.h[i] = v >= 0 ? 2 * v / (c.scale * fu) : 2 * v / (c.scale * fl);
    auto H = elementary_H(out.h[i], out.eps, Rational(1));
    Rational lower_after = 0;
    for (int p = 0; p < 6; ++p) {
      if (H.image_upper(p)) continue;
      Rational src = centroid(H.C[p]).y > 0 ? fu : fl;
      lower_after += src * c.scale * area(H.C[p]);
    }
    Rational moved = lower_after - fl * c.scale / 2;
    out.mass_after_corridors[c.lower] += moved;
    out.mass_after_corridors[c.upper] -= moved;
    out.corridor_map[i] = std::move(H);
  }
  for (size_t i = 0; i < m; ++i)
    if (out.mass_after_corridors[i] != areas[i])
      throw std::logic_error("surface transport: corridor stage left a mass defect");

  // Second stage: triangle transport of the corrected density on each U_i.
  const Num eps_hat_num = to_num(eps_hat);
  for (size_t u = 0; u < m; ++u) {
    std::vector<DensityCell> world{{as_polygon(convert<Num>(L.triangles[u])), to_num(f[u])}};
    for (size_t i = 0; i < m; ++i) {
      if (!L.corridor[i] || (L.corridor[i]->lower != u && L.corridor[i]->upper != u)) continue;
      const Corridor& c = *L.corridor[i];
      const auto& H = *out.corridor_map[i];
      bool lower = c.lower == u;
      world.push_back({as_polygon(convert<Num>(map_triangle(c.frame, lower ? kLowerHalf : kUpperHalf))),
                       -to_num(f[u])});
      for (int p = 0; p < 6; ++p) {
        if (H.image_upper(p) == lower || area(H.C[p]) == 0) continue;
        Rational src = centroid(H.C[p]).y > 0 ? f[c.upper] : f[c.lower];
        world.push_back({as_polygon(convert<Num>(map_triangle(c.frame, H.Chat[p]))),
                         to_num(src / H.piece[p].det())});
      }
    }
    // Right angle of the canonical triangle at the vertex facing the longest edge.
    auto T = convert<Num>(L.triangles[u]);
    size_t apex = 0;
    Num longest = -1;
    for (size_t k = 0; k < 3; ++k) {
      const auto& p = T[(k + 1) % 3];
      const auto& q = T[(k + 2) % 3];
      Num len = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
      if (len > longest) {
        longest = len;
        apex = k;
      }
    }
    Triangle<Num> target{T[(apex + 1) % 3], T[apex], T[(apex + 2) % 3]};
    Affine<Num> A = affine_from(canonical_V(Num(1)), target);
    Affine<Num> inv = A.inverse();
    std::vector<DensityCell> cells;
    for (const auto& c : world) cells.push_back({map_polygon(inv, c.shape), c.value});
    out.frames.push_back(A);
    out.second.push_back(bisection_transport(cells, 1, eps_hat_num, depth, jobs));
    const auto& tt = out.second.back();
    Num leaf_sum = 0;
    for (Num x : tt.level_mass.back()) leaf_sum += x;
    out.final_mass.push_back(leaf_sum * std::fabs(A.det()));
    for (Num r : tt.level_residual) out.max_leaf_residual = std::max(out.max_leaf_residual, r);
  }
  return out;
}

} // namespace ietflow
