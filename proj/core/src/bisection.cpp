#include "ietflow/transport.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace ietflow {

namespace {

template <class F>
void parallel_for(size_t count, size_t jobs, F&& body) {
  jobs = std::max<size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += jobs) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(lock);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Halves of (hypA, apex, hypB): the y > 0 half first.
std::array<Triangle<Num>, 2> halves(const Triangle<Num>& t) {
  Point<Num> m{(t[0].x + t[2].x) / 2, (t[0].y + t[2].y) / 2};
  return {{{t[0], m, t[1]}, {t[1], m, t[2]}}};
}

bool degenerate(const Triangle<Num>& t) { return cross(t[0], t[1], t[2]) == 0; }

// Drops duplicate and nearly collinear vertices; a short edge would give a
// clipping half-plane of arbitrary direction.
Polygon<Num> simplify(Polygon<Num> p, Num span) {
  const Num tol = 1e-15L * span * span;
  for (bool changed = true; changed && p.size() >= 3;) {
    changed = false;
    for (size_t i = 0; i < p.size() && p.size() >= 3; ++i) {
      const auto& a = p[(i + p.size() - 1) % p.size()];
      const auto& c = p[(i + 1) % p.size()];
      if (std::fabs(cross(a, p[i], c)) <= tol) {
        p.erase(p.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (p.size() < 3) p.clear();
  return p;
}

} // namespace

Num cell_mass(const std::vector<DensityCell>& cells) {
  Num s = 0;
  for (const auto& c : cells) s += c.value * area(c.shape);
  return s;
}

Num cell_mass(const std::vector<DensityCell>& cells, const Polygon<Num>& region) {
  // Orientation of a sliver is lost to rounding; its mass is below it anyway.
  Num lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (const auto& p : region) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  Num span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (region.size() < 3 || area(region) <= 1e-17L * span * span) return 0;
  const Polygon<Num> r = simplify(region, span);
  if (r.empty()) return 0;
  Num s = 0;
  for (const auto& c : cells) {
    auto p = clip(c.shape, r);
    if (!p.empty()) s += c.value * area(p);
  }
  return s;
}

Num lower_mass(const std::vector<DensityCell>& cells, Num h, Num eps, Num a) {
  // The region between (0, +-a) and the polyline through y is not convex;
  // it is the union of C1 and C2.
  Num side = h < 0 ? -a : a;
  Point<Num> y{eps * a * (1 - std::fabs(h)), h * a};
  Num q = cell_mass(cells, Polygon<Num>{{0, 0}, {0, side}, y}) +
          cell_mass(cells, Polygon<Num>{{a, 0}, {0, side}, y});
  return h < 0 ? q : cell_mass(cells) - q;
}

Num find_h(const std::vector<DensityCell>& cells, Num eps, Num a) {
  const Num target = a * a / 2;
  const Num tol = 1e-16L * a * a;
  // Lower mass increases with h; regula falsi with the Illinois weight
  // keeps the bracket and converges fast on this near-linear function.
  Num lo = -0.5L, hi = 0.5L;
  Num flo = lower_mass(cells, lo, eps, a) - target;
  Num fhi = lower_mass(cells, hi, eps, a) - target;
  if (flo > 0 || fhi < 0) throw DomainError("find_h: density bound violated, no balancing h in [-1/2, 1/2]");
  if (std::fabs(lower_mass(cells, 0, eps, a) - target) <= tol) return 0;
  Num best = 0, fbest = INFINITY;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    Num mid = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(mid > lo && mid < hi)) mid = (lo + hi) / 2;
    Num fm = lower_mass(cells, mid, eps, a) - target;
    if (std::fabs(fm) < std::fabs(fbest)) {
      best = mid;
      fbest = fm;
    }
    if (std::fabs(fm) <= tol) return mid;
    if (fm < 0) {
      lo = mid;
      flo = fm;
      if (side == -1) fhi /= 2;
      side = -1;
    } else {
      hi = mid;
      fhi = fm;
      if (side == 1) flo /= 2;
      side = 1;
    }
    if (hi - lo <= 4 * std::numeric_limits<Num>::epsilon()) break;
  }
  if (std::fabs(fbest) > 1e-15L * a * a)
    throw DomainError("find_h: residual above 1e-15 Leb(V)");
  return best;
}

Num TriangleTransport::level_area(size_t n) const { return a * a / std::ldexp(Num(1), static_cast<int>(n)); }

Triangle<Num> TriangleTransport::level_triangle(size_t n, size_t j) const {
  if (n < stages.size()) return stages[n][j].tri;
  if (n == 0) return canonical_V(a);
  return halves(level_triangle(n - 1, j / 2))[j % 2];
}

Point<Num> TriangleTransport::apply(Point<Num> p) const {
  const Num tol = 1e-12L * a;
  size_t j = 0;
  for (size_t n = 0; n < stages.size(); ++n) {
    const auto& node = stages[n][j];
    Point<Num> q = node.H(node.frame.inverse()(p), tol);
    j = 2 * j + (q.y >= 0 ? 0 : 1);
    p = node.frame(q);
  }
  return p;
}

Point<Num> TriangleTransport::apply_inverse(Point<Num> p) const {
  const Num tol = 1e-12L * a;
  std::vector<size_t> path{0};
  for (size_t n = 0; n + 1 < stages.size(); ++n) {
    Point<Num> q = stages[n][path.back()].frame.inverse()(p);
    path.push_back(2 * path.back() + (q.y >= 0 ? 0 : 1));
  }
  for (size_t n = stages.size(); n-- > 0;) {
    const auto& node = stages[n][path[n]];
    p = node.frame(node.H.apply_inverse(node.frame.inverse()(p), tol));
  }
  return p;
}

TriangleTransport bisection_transport(const std::vector<DensityCell>& cells, Num a, Num eps_hat,
                                      size_t depth, size_t jobs) {
  if (!(eps_hat > 0 && eps_hat < 1e-8L)) throw DomainError("bisection transport: eps_hat must lie in (0, 1e-8)");
  if (!(a > 0)) throw DomainError("bisection transport: a must be positive");
  if (depth > 24) throw DomainError("bisection transport: depth above the cap of 24");
  TriangleTransport t;
  t.a = a;
  t.eps_hat = eps_hat;
  t.eps = std::sqrt(eps_hat);
  t.depth = depth;
  const Triangle<Num> V = canonical_V(a);
  const Num drop = 1e-26L * a * a;

  std::vector<std::vector<DensityCell>> level{cells};
  t.level_mass.push_back({cell_mass(cells)});
  t.level_residual.push_back(std::fabs(t.level_mass[0][0] - a * a) / (a * a));
  std::vector<Triangle<Num>> tris{V};
  for (size_t n = 0; n < depth; ++n) {
    const size_t count = tris.size();
    std::vector<TransportNode> nodes(count);
    std::vector<std::vector<DensityCell>> next(2 * count);
    std::vector<Num> lip(count, 1), habs(count, 0);
    parallel_for(count, jobs, [&](size_t j) {
      TransportNode& node = nodes[j];
      node.tri = tris[j];
      node.frame = affine_from(V, node.tri);
      const Affine<Num> inv = node.frame.inverse();
      std::vector<DensityCell> local;
      local.reserve(level[j].size());
      for (const auto& c : level[j]) local.push_back({map_polygon(inv, c.shape), c.value});
      node.h = find_h(local, t.eps, a);
      if (!(std::fabs(node.h) < eps_hat))
        throw DomainError("bisection transport: density bound propagation failure, |h| >= eps_hat");
      node.H = elementary_H(node.h, t.eps, a);
      lip[j] = max_lipschitz(node.H);
      habs[j] = std::fabs(node.h);
      for (const auto& c : local) {
        for (int i = 0; i < 6; ++i) {
          if (degenerate(node.H.C[i])) continue;
          auto piece = clip(c.shape, node.H.C[i]);
          if (piece.empty()) continue;
          auto mapped = map_polygon(node.H.piece[i], piece);
          if (area(mapped) <= drop) continue;
          size_t child = 2 * j + (node.H.image_upper(i) ? 0 : 1);
          next[child].push_back({map_polygon(node.frame, mapped), c.value / node.H.piece[i].det()});
        }
      }
    });
    std::vector<Triangle<Num>> child_tris(2 * count);
    for (size_t j = 0; j < count; ++j) {
      auto hv = halves(tris[j]);
      child_tris[2 * j] = hv[0];
      child_tris[2 * j + 1] = hv[1];
      t.max_lipschitz = std::max(t.max_lipschitz, lip[j]);
      t.max_abs_h = std::max(t.max_abs_h, habs[j]);
    }
    t.stages.push_back(std::move(nodes));
    level = std::move(next);
    tris = std::move(child_tris);
    std::vector<Num> masses(level.size());
    Num leaf = t.level_area(n + 1), worst = 0;
    for (size_t c = 0; c < level.size(); ++c) {
      masses[c] = cell_mass(level[c]);
      worst = std::max(worst, std::fabs(masses[c] - leaf) / leaf);
    }
    t.level_mass.push_back(std::move(masses));
    t.level_residual.push_back(worst);
  }
  t.final_cells = std::move(level);
  return t;
}

Num preimage_mass(const TriangleTransport& t, const std::vector<DensityCell>& cells, size_t n,
                  size_t j) {
  if (n > t.stages.size()) throw DomainError("preimage mass: level beyond the transport depth");
  std::vector<Polygon<Num>> polys{as_polygon(t.level_triangle(n, j))};
  for (size_t k = n; k-- > 0;) {
    const auto& node = t.stages[k][j >> (n - k)];
    const Affine<Num> inv = node.frame.inverse();
    std::vector<Polygon<Num>> back;
    for (const auto& p : polys) {
      auto q = map_polygon(inv, p);
      for (int i = 0; i < 6; ++i) {
        if (degenerate(node.H.Chat[i])) continue;
        auto c = clip(q, node.H.Chat[i]);
        if (c.empty() || area(c) <= 1e-24L * t.a * t.a) continue;
        back.push_back(map_polygon(node.frame, map_polygon(node.H.inverse[i], c)));
      }
    }
    polys = std::move(back);
  }
  Num mass = 0;
  for (const auto& p : polys) mass += cell_mass(cells, p);
  return mass;
}

std::vector<DensityCell> random_density(Num a, Num spread, size_t lines, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Polygon<Num>> shapes{as_polygon(canonical_V(a))};
  for (size_t l = 0; l < lines; ++l) {
    // Chord through a random interior point in a random direction.
    Num u = unit(rng), w = unit(rng);
    Point<Num> p{a * u * (1 - w), a * (2 * w - 1) * (1 - u * (1 - w)) * 0.5L};
    Num theta = 3.14159265358979323846L * unit(rng);
    Point<Num> q{p.x + std::cos(theta), p.y + std::sin(theta)};
    std::vector<Polygon<Num>> split;
    for (const auto& s : shapes) {
      auto left = clip_half_plane(s, p, q);
      auto right = clip_half_plane(s, q, p);
      if (!left.empty() && area(left) > 1e-20L * a * a) split.push_back(std::move(left));
      if (!right.empty() && area(right) > 1e-20L * a * a) split.push_back(std::move(right));
    }
    shapes = std::move(split);
  }
  std::vector<DensityCell> cells;
  for (auto& s : shapes) cells.push_back({std::move(s), 1 + spread * (2 * static_cast<Num>(unit(rng)) - 1)});
  Num scale = a * a / cell_mass(cells);
  for (auto& c : cells) c.value *= scale;
  return cells;
}

} // namespace ietflow
