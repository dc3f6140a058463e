#include "doctest.h"

#include "ietflow/transport.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace ietflow;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo, hi);
  return Rational(d(rng), den);
}

// Largest singular value by power iteration on M^T M.
long double power_norm(const std::array<std::array<long double, 2>, 2>& m) {
  long double a = m[0][0] * m[0][0] + m[1][0] * m[1][0];
  long double b = m[0][0] * m[0][1] + m[1][0] * m[1][1];
  long double c = m[0][1] * m[0][1] + m[1][1] * m[1][1];
  long double x = 1, y = 0.5L;
  for (int i = 0; i < 500; ++i) {
    long double nx = a * x + b * y, ny = b * x + c * y;
    long double n = std::hypot(nx, ny);
    x = nx / n;
    y = ny / n;
  }
  return std::sqrt(x * (a * x + b * y) + y * (b * x + c * y));
}

// Dense Gaussian elimination over the rationals.
std::vector<Rational> dense_solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (A[p][c] == 0) ++p;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational k = A[r][c] / A[c][c];
      for (size_t j = c; j < n; ++j) A[r][j] -= k * A[c][j];
      b[r] -= k * b[c];
    }
  }
  for (size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return b;
}

// Density value at p, summing overlapping cells.
Num density_at(const std::vector<DensityCell>& cells, const Point<Num>& p) {
  Num s = 0;
  for (const auto& c : cells) {
    bool inside = true;
    Num sg = signed_area(c.shape) < 0 ? -1 : 1;
    for (size_t i = 0; i < c.shape.size() && inside; ++i)
      if (sg * cross(c.shape[i], c.shape[(i + 1) % c.shape.size()], p) < 0) inside = false;
    if (inside) s += c.value;
  }
  return s;
}

SuspensionDatum four_interval_datum() {
  SuspensionDatum s;
  s.perm = LabeledPermutation::from_sigma({4, 3, 2, 1});
  s.lambda = {q(1, 7), q(2, 7), q(3, 11), q(5, 13)};
  for (int t : {3, 1, -2, -4}) s.tau.push_back(QVector::scalar(t));
  s.basis = FormalBasis(1);
  return s;
}

} // namespace

TEST_CASE("operator norm closed form against power iteration") {
  using M = std::array<std::array<long double, 2>, 2>;
  CHECK(operator_norm_2x2(M{{{1, 0}, {0, 1}}}) == doctest::Approx(1.0));
  CHECK(operator_norm_2x2(M{{{2, 0}, {0, 0.5L}}}) == doctest::Approx(2.0));
  CHECK(static_cast<double>(operator_norm_2x2(M{{{1, 1}, {0, 1}}})) ==
        doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 200; ++k) {
    M m{{{u(rng), u(rng)}, {u(rng), u(rng)}}};
    CHECK(std::fabs(operator_norm_2x2(m) - power_norm(m)) < 1e-12L);
  }
}

TEST_CASE("clipping and affine maps") {
  Polygon<Rational> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  Triangle<Rational> t{Point<Rational>{1, -1}, Point<Rational>{3, 1}, Point<Rational>{1, 3}};
  CHECK(area(clip(sq, t)) == q(2));
  Triangle<Rational> a{Point<Rational>{0, 0}, Point<Rational>{1, 0}, Point<Rational>{0, 1}};
  Triangle<Rational> b{Point<Rational>{2, 1}, Point<Rational>{3, 3}, Point<Rational>{q(1, 2), 4}};
  auto f = affine_from(a, b);
  for (int i = 0; i < 3; ++i) CHECK(f(a[i]) == b[i]);
  auto g = f.inverse();
  for (int i = 0; i < 3; ++i) CHECK(g(b[i]) == a[i]);
  CHECK(f.after(g).m == Affine<Rational>{}.m);
}

TEST_CASE("elementary map matches the closed-form linear parts") {
  auto H = elementary_H(q(1, 10), q(1, 4), Rational(1));
  CHECK(H.piece[0].m == std::array<std::array<Rational, 2>, 2>{{{q(10, 9), q(0)}, {q(-4, 9), q(1)}}});
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    Rational h = random_rational(rng, 0, 900, 1000);
    Rational e = random_rational(rng, 1, 999, 1000);
    Rational a = random_rational(rng, 1, 999, 1000);
    auto G = elementary_H(h, e, a);
    auto closed = closed_form_linear_parts(h, e);
    for (int i = 0; i < 6; ++i) CHECK(G.piece[i].m == closed[i]);
  }
}

TEST_CASE("elementary map invariants in exact arithmetic") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    Rational h = random_rational(rng, -990, 990, 1000);
    Rational e = random_rational(rng, 1, 999, 1000);
    Rational a = random_rational(rng, 1, 2000, 1000);
    auto H = elementary_H(h, e, a);
    Rational ah = abs(h);
    for (int i = 0; i < 6; ++i) {
      Rational expect = i < 2 ? Rational(1 / (1 - ah)) : Rational(1 / (1 + ah));
      if (h != 0) CHECK(H.piece[i].det() == expect);
      for (const auto& p : H.C[i]) CHECK(in_triangle(canonical_V(a), p));
      auto img = map_triangle(H.piece[i], H.C[i]);
      for (const auto& p : img)
        CHECK(std::find(H.Chat[i].begin(), H.Chat[i].end(), p) != H.Chat[i].end());
    }
    // Boundary of V fixed pointwise.
    auto V = canonical_V(a);
    for (int e2 = 0; e2 < 3; ++e2)
      for (int s = 0; s <= 40; ++s) {
        Rational t(s, 40);
        Point<Rational> p{V[e2].x + t * (V[(e2 + 1) % 3].x - V[e2].x),
                          V[e2].y + t * (V[(e2 + 1) % 3].y - V[e2].y)};
        auto i = H.locate(p);
        REQUIRE(i);
        CHECK(H.piece[*i](p) == p);
        for (int j = 0; j < 6; ++j)
          if (in_triangle(H.C[j], p)) CHECK(H.piece[j](p) == p);
      }
    // Pieces agree on every shared vertex.
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (const auto& p : H.C[i])
          for (const auto& w : H.C[j])
            if (p == w) CHECK(H.piece[i](p) == H.piece[j](p));
    // Negative h is the reflection of positive h.
    auto G = elementary_H(Rational(-h), e, a);
    for (int s = 0; s < 30; ++s) {
      Point<Rational> p{a * Rational(s, 61), a * Rational(s % 7 - 3, 13)};
      if (!in_triangle(V, p)) continue;
      Point<Rational> jp{p.x, -p.y};
      auto x = H(p), y = G(jp);
      CHECK(x.x == y.x);
      CHECK(x.y == -y.y);
    }
  }
  auto I = elementary_H(q(0), q(1, 3), q(1));
  for (int i = 0; i < 6; ++i) CHECK(I.piece[i].m == Affine<Rational>{}.m);
  CHECK_THROWS_AS(elementary_H(q(1), q(1, 3), q(1)), DomainError);
  CHECK_THROWS_AS(elementary_H(q(0), q(1), q(1)), DomainError);
}

TEST_CASE("floating elementary pieces follow the exact ones for tiny h") {
  for (long k : {-300000000L, -7L, 1L, 13L, 999L, 400000000L}) {
    Rational h(k, 1000000000000000000LL);
    Rational e(3, 100000);
    auto exact = elementary_H(h, e, Rational(1));
    auto num = elementary_H(to_num(h), to_num(e), Num(1));
    for (int i = 0; i < 6; ++i) {
      auto ref = convert<Num>(exact.piece[i]);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) CHECK(std::fabs(num.piece[i].m[r][c] - ref.m[r][c]) < 1e-15L);
        CHECK(std::fabs(num.piece[i].t[r] - ref.t[r]) < 1e-15L);
      }
    }
  }
}

TEST_CASE("distance between elementary maps stays under 20a/eps |h2 - h1|") {
  CHECK(lipschitz_gap(0.1L, 0.1L, 0.25L, 1, 400) == 0);
  long double g = lipschitz_gap(0.1L, 0.2L, 0.25L, 1, 2500);
  CHECK(g > 0);
  CHECK(g <= 8.0L);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.49, 0.49), e(0.05, 0.95), a(0.1, 1.0);
  for (int k = 0; k < 100; ++k) {
    long double h1 = u(rng), h2 = u(rng), eps = e(rng), aa = a(rng);
    CHECK(lipschitz_gap(h1, h2, eps, aa, 400) <= 20 * aa / eps * std::fabs(h2 - h1) * (1 + 1e-12L));
  }
}

TEST_CASE("find_h balances the halves") {
  const Num a = 1, eps = std::sqrt(1e-9L);
  std::vector<DensityCell> one{{as_polygon(canonical_V(a)), 1}};
  CHECK(find_h(one, eps, a) == 0);
  // Heavier top half: the lower region must grow upward.
  Polygon<Num> top{{0, a}, {a, 0}, {0, 0}}, bottom{{0, 0}, {a, 0}, {0, -a}};
  Num d = 4e-10L;
  std::vector<DensityCell> cells{{top, 1 + d}, {bottom, 1 - d}};
  Num h = find_h(cells, eps, a);
  CHECK(h > 0);
  CHECK(std::fabs(h) < 1e-9L);
  CHECK(std::fabs(lower_mass(cells, h, eps, a) - a * a / 2) <= 1e-15L);
  // Quadrature of the lower region on a midpoint grid.
  auto rd = random_density(a, 0.3L, 6, 17);
  Num hr = find_h(rd, 0.25L, a);
  Point<Num> y{0.25L * a * (1 - std::fabs(hr)), hr * a};
  const int n = 1200;
  Num sum = 0, cellsz = a / n;
  for (int i = 0; i < n; ++i)
    for (int j = -n; j < n; ++j) {
      Point<Num> p{(i + 0.5L) * cellsz, (j + 0.5L) * cellsz};
      if (p.x + std::fabs(p.y) > a) continue;
      // Below the polyline (0,0) -> y -> (a,0).
      Num line = p.x <= y.x ? y.y * p.x / y.x : y.y * (a - p.x) / (a - y.x);
      if (p.y < line) sum += density_at(rd, p) * cellsz * cellsz;
    }
  CHECK(std::fabs(sum - a * a / 2) < 3e-3L);
}

TEST_CASE("uniform density gives the identity at every depth") {
  std::vector<DensityCell> one{{as_polygon(canonical_V(Num(1))), 1}};
  auto t = bisection_transport(one, 1, 1e-9L, 6);
  for (const auto& stage : t.stages)
    for (const auto& node : stage) CHECK(node.h == 0);
  Point<Num> p{0.3L, -0.1L};
  auto r = t.apply(p);
  CHECK(std::fabs(r.x - p.x) < 1e-15L);
  CHECK(std::fabs(r.y - p.y) < 1e-15L);
}

TEST_CASE("bisection transport equalizes masses at every depth") {
  const Num eps_hat = 1e-9L;
  auto cells = random_density(1, eps_hat / 4, 20, 5);
  for (const auto& c : cells) {
    CHECK(c.value > 1 / (1 + eps_hat));
    CHECK(c.value < 1 / (1 - eps_hat));
  }
  auto t = bisection_transport(cells, 1, eps_hat, 9, 2);
  CHECK(t.stages[0][0].h == find_h(cells, t.eps, 1));
  for (size_t n = 0; n < t.level_residual.size(); ++n) CHECK(t.level_residual[n] < 1e-12L);
  CHECK(t.max_lipschitz < 1.25L);
  CHECK(t.max_abs_h < eps_hat);
  // Pull-back masses against the original cells.
  for (size_t n : {1u, 4u, 9u})
    for (size_t j = 0; j < (size_t(1) << n); j += 3) {
      Num m = preimage_mass(t, cells, n, j);
      CHECK(std::fabs(m - t.level_area(n)) / t.level_area(n) < 1e-12L);
      CHECK(std::fabs(m - t.level_mass[n][j]) / t.level_area(n) < 1e-12L);
    }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100; ++k) {
    Num x = u(rng), y = (2 * u(rng) - 1) * (1 - x);
    Point<Num> p{x, y};
    auto back = t.apply_inverse(t.apply(p));
    CHECK(std::hypot(back.x - p.x, back.y - p.y) < 1e-14L);
  }
  // Rejected when the density leaves the window.
  auto wide = random_density(1, 0.3L, 4, 1);
  CHECK_THROWS_AS(bisection_transport(wide, 1, eps_hat, 2), DomainError);
  CHECK_THROWS_AS(bisection_transport(cells, 1, 1e-8L, 2), DomainError);
}

TEST_CASE("corridor system against a dense solver") {
  // A strip of triangles with chain adjacency k(i) = i - 1.
  std::vector<Triangle<Rational>> strip;
  for (int i = 0; i < 7; ++i) {
    if (i % 2 == 0)
      strip.push_back({Point<Rational>{i / 2, 0}, Point<Rational>{i / 2 + 1, 0}, Point<Rational>{i / 2, 1}});
    else
      strip.push_back({Point<Rational>{i / 2 + 1, 0}, Point<Rational>{i / 2 + 1, 1}, Point<Rational>{i / 2, 1}});
  }
  auto L = layout_surface(strip);
  for (size_t i = 1; i < strip.size(); ++i) CHECK(*L.parent[i] == i - 1);
  std::mt19937_64 rng(4);
  std::vector<Rational> rhs(strip.size());
  for (auto& r : rhs) r = random_rational(rng, -50, 50, 97);
  auto v = solve_corridor_system(L, rhs);
  size_t m = strip.size() - 1;
  std::vector<std::vector<Rational>> B(m, std::vector<Rational>(m, 0));
  std::vector<Rational> b(m);
  for (size_t i = 1; i <= m; ++i) {
    B[i - 1][i - 1] = 1;
    for (size_t j = 1; j <= m; ++j)
      if (*L.parent[j] == i) B[i - 1][j - 1] = -1;
    b[i - 1] = rhs[i];
  }
  auto dense = dense_solve(B, b);
  for (size_t i = 1; i <= m; ++i) CHECK(v[i] == dense[i - 1]);
  // Corridors sit across their edge and do not overlap.
  for (size_t i = 1; i <= m; ++i) {
    const auto& c = *L.corridor[i];
    auto W = map_triangle(c.frame, canonical_V(Rational(1)));
    CHECK(in_triangle(strip[i], W[2]));
    CHECK(in_triangle(strip[i - 1], W[0]));
    CHECK(c.scale == area(W));
  }
}

TEST_CASE("surface transport on a triangulated four-interval suspension") {
  auto tri = triangulate(polygon_vertices(four_interval_datum()));
  auto L = layout_surface(surface_triangles(tri));
  const Rational eps_hat(4, 10000000000LL);
  std::vector<Rational> ones(L.triangles.size(), Rational(1));
  auto flat = surface_transport(L, ones, eps_hat, 3);
  for (size_t i = 0; i < L.triangles.size(); ++i) {
    CHECK(flat.v[i] == 0);
    CHECK(flat.h[i] == 0);
  }
  auto f = perturbed_density(L, eps_hat, 8);
  bool nonuniform = false;
  for (const auto& x : f) nonuniform |= x != 1;
  CHECK(nonuniform);
  auto s = surface_transport(L, f, eps_hat, 6);
  CHECK(s.eps == Rational(2, 100000));
  Rational total = 0, leb = 0;
  for (size_t i = 0; i < L.triangles.size(); ++i) {
    CHECK(s.mass_after_corridors[i] == area(L.triangles[i]));
    total += s.mass_after_corridors[i];
    leb += area(L.triangles[i]);
    Num a = to_num(area(L.triangles[i]));
    CHECK(std::fabs(s.final_mass[i] - a) / a < 1e-12L);
    if (L.corridor[i]) CHECK(abs(s.h[i]) < eps_hat);
  }
  CHECK(total == leb);
  CHECK(s.max_leaf_residual < 1e-12L);
  // Too wide a density is rejected with the violated inequality named.
  std::vector<Rational> bad = ones;
  bad[0] = Rational(2);
  CHECK_THROWS_AS(surface_transport(L, bad, eps_hat, 2), DomainError);
}
