#pragma once

#include "ietflow/elementary.hpp"
#include "ietflow/suspension.hpp"

#include <optional>
#include <vector>

namespace ietflow {

using Num = long double;

// One constant piece of a piecewise constant density.  Cells of a density
// may overlap; the density is the sum of the cells covering a point.
struct DensityCell {
  Polygon<Num> shape;
  Num value;
};

Num cell_mass(const std::vector<DensityCell>& cells);
Num cell_mass(const std::vector<DensityCell>& cells, const Polygon<Num>& region);

// Mass below the polyline (0,0) -> y(h) -> (a,0) inside V.
Num lower_mass(const std::vector<DensityCell>& cells, Num h, Num eps, Num a);

// h with lower mass a^2 / 2, by a bracketed monotone search on [-1/2, 1/2].
Num find_h(const std::vector<DensityCell>& cells, Num eps, Num a);

struct TransportNode {
  Triangle<Num> tri;       // hypotenuse end, right-angle vertex, hypotenuse end
  Affine<Num> frame;       // canonical V -> tri
  Num h = 0;
  ElementaryH<Num> H;
};

struct TriangleTransport {
  Num a = 1, eps_hat = 0, eps = 0;
  size_t depth = 0;
  // stages[n][j] acts on the level-n triangle j; its halves are the
  // level-(n+1) triangles 2j (y > 0 in its frame) and 2j+1.
  std::vector<std::vector<TransportNode>> stages;
  // level_mass[n][j]: pushforward mass of level-n triangle j.
  std::vector<std::vector<Num>> level_mass;
  std::vector<Num> level_residual;  // max |mass - Leb| / Leb per level
  Num max_lipschitz = 1, max_abs_h = 0;
  // Pushforward density on each deepest triangle.
  std::vector<std::vector<DensityCell>> final_cells;

  Triangle<Num> level_triangle(size_t n, size_t j) const;
  Num level_area(size_t n) const;
  Point<Num> apply(Point<Num> p) const;
  Point<Num> apply_inverse(Point<Num> p) const;
};

// Transport of the density on canonical V of size a.  Throws when some
// stage leaves |h| < eps_hat, the sign that eps_hat is too large.
TriangleTransport bisection_transport(const std::vector<DensityCell>& cells, Num a, Num eps_hat,
                                      size_t depth, size_t jobs = 1);

// Mass of the preimage of level-n triangle j, by pulling it back through the
// inverse stages and clipping against the original cells.
Num preimage_mass(const TriangleTransport& t, const std::vector<DensityCell>& cells, size_t n,
                  size_t j);

// Random density on V: cut by `lines` random chords, cell values in
// 1 + [-1, 1] * spread, normalized to total mass a^2.
std::vector<DensityCell> random_density(Num a, Num spread, size_t lines, unsigned long long seed);

// Surface stage.

struct Corridor {
  size_t lower = 0, upper = 0;  // lower = i, upper = k(i)
  Affine<Rational> frame;       // canonical V (a = 1) -> W_i, similarity
  Rational scale;               // |det frame| = Leb(W_i)
};

struct SurfaceLayout {
  std::vector<Triangle<Rational>> triangles;
  std::vector<size_t> order;                 // order[p] is U_p
  std::vector<std::optional<size_t>> parent; // by triangle: k(i)
  std::vector<std::optional<Corridor>> corridor;  // by triangle, none for U_0
};

std::vector<Triangle<Rational>> surface_triangles(const Triangulation& t);
SurfaceLayout layout_surface(const std::vector<Triangle<Rational>>& triangles);

// Solution of B v = rhs with b_ii = 1 and b_{k(j) j} = -1, indexed by triangle.
std::vector<Rational> solve_corridor_system(const SurfaceLayout& layout,
                                            const std::vector<Rational>& rhs);

// Per-triangle density 1 + t (u_i - mean), scaled down until the corridor
// bounds hold for eps_hat.
std::vector<Rational> perturbed_density(const SurfaceLayout& layout, const Rational& eps_hat,
                                        unsigned long long seed);

struct SurfaceTransport {
  Rational eps_hat, eps;
  std::vector<Rational> density, v, h;
  std::vector<std::optional<ElementaryH<Rational>>> corridor_map;
  std::vector<Rational> mass_after_corridors;  // exact
  std::vector<Affine<Num>> frames;             // canonical V -> U_i
  std::vector<TriangleTransport> second;
  std::vector<Num> final_mass;                 // pushforward mass of U_i
  Num max_leaf_residual = 0;                   // relative to leaf area
};

SurfaceTransport surface_transport(const SurfaceLayout& layout, const std::vector<Rational>& density,
                                   const Rational& eps_hat, size_t depth, size_t jobs = 1);

} // namespace ietflow
