#include "doctest.h"

#include "ietflow/suspension.hpp"

#include <random>

using namespace ietflow;

namespace {

SuspensionDatum make(std::vector<int> sigma, std::vector<Rational> lam, std::vector<int> tau) {
  SuspensionDatum s;
  s.perm = LabeledPermutation::from_sigma(sigma);
  s.lambda = std::move(lam);
  for (int t : tau) s.tau.push_back(QVector::scalar(t));
  s.basis = FormalBasis(1);
  return s;
}

Rational q(long n, long d = 1) { return Rational(n, d); }

} // namespace

TEST_CASE("theta validation") {
  auto s = make({3, 2, 1}, {1, 1, 1}, {1, 1, -3});
  CHECK(validate_theta(s).ok);
  auto bad = make({3, 2, 1}, {1, 1, 1}, {0, 1, -3});
  CHECK_FALSE(validate_theta(bad).ok);
  // Two zero-length neighbours on the top row with opposite tau.
  auto z = make({4, 3, 2, 1}, {0, 0, 1, 1}, {2, -1, 1, -5});
  auto r = validate_theta(z);
  CHECK_FALSE(r.ok);
  CHECK(r.violation.find("zero-length") != std::string::npos);
}

TEST_CASE("roof from tau") {
  auto s = make({3, 2, 1}, {1, 1, 1}, {1, 1, -3});
  auto h = roof_from_tau(s.perm, s.tau, s.basis);
  CHECK(h == std::vector<QVector>{QVector::scalar(2), QVector::scalar(4), QVector::scalar(2)});
  CHECK(area(s.lambda, h) == QVector::scalar(8));
  auto sw = make({2, 1}, {1, 1}, {5, -3});
  auto hs = roof_from_tau(sw.perm, sw.tau, sw.basis);
  CHECK(hs[0] == QVector::scalar(3));
  CHECK(hs[1] == QVector::scalar(5));
}

TEST_CASE("right induction on the swap") {
  auto s = make({2, 1}, {q(1, 3), q(2, 3)}, {1, -1});
  auto r = polygonal_rv_right(s);
  CHECK(r.lambda == std::vector<Rational>{q(1, 3), q(1, 3)});
  CHECK(r.tau[1] == QVector::scalar(-2));
  auto f = to_flow(s);
  auto rf = polygonal_rv_right(f);
  // Bottom-last symbol A is shorter: it is the loser and absorbs B's roof.
  CHECK(rf.h[0] == f.h[0] + f.h[1]);
  CHECK(area(rf.lambda, rf.h) == area(f.lambda, f.h));
  CHECK(roof_from_tau(r.perm, r.tau, r.basis) == rf.h);
  auto eq = make({2, 1}, {q(1, 2), q(1, 2)}, {1, -1});
  CHECK_THROWS_AS(polygonal_rv_right(eq), DomainError);
}

TEST_CASE("left induction mirrors the right one") {
  auto s = make({2, 1}, {q(2, 3), q(1, 3)}, {1, -1});
  auto l = polygonal_rv_left(s);
  auto m = reflect(polygonal_rv_right(reflect(s)));
  CHECK(l.lambda == m.lambda);
  CHECK(l.tau == m.tau);
  CHECK(l.lambda == std::vector<Rational>{q(1, 3), q(1, 3)});
  auto f = to_flow(s);
  auto lf = polygonal_rv_left(f);
  CHECK(area(lf.lambda, lf.h) == area(f.lambda, f.h));
  CHECK(roof_from_tau(l.perm, l.tau, l.basis) == lf.h);
  auto s2 = make({2, 1}, {q(3, 4), q(1, 4)}, {1, -1});
  auto back = polygonal_rv_right(polygonal_rv_left(s2));
  CHECK_FALSE(back.lambda == s2.lambda);
}

TEST_CASE("inductions keep area and agree across coordinates") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = make({5, 3, 1, 4, 2}, {}, {});
    for (int i = 0; i < 5; ++i) s.lambda.push_back(q(1 + rng() % 50, 1 + rng() % 50));
    std::vector<int> t(5);
    do
      for (auto& x : t) x = static_cast<int>(rng() % 19) - 9;
    while (!validate_theta(make({5, 3, 1, 4, 2}, s.lambda, t)).ok);
    s = make({5, 3, 1, 4, 2}, s.lambda, t);
    auto f = to_flow(s);
    QVector a0 = area(f.lambda, f.h);
    for (int step = 0; step < 8; ++step) {
      try {
        bool right = step % 2 == 0;
        s = right ? polygonal_rv_right(s) : polygonal_rv_left(s);
        f = right ? polygonal_rv_right(f) : polygonal_rv_left(f);
      } catch (const DomainError&) {
        break;
      }
      CHECK(area(f.lambda, f.h) == a0);
      auto om = translation_matrix(s.perm);
      for (size_t a = 0; a < 5; ++a) {
        QVector h(1);
        for (size_t b = 0; b < 5; ++b) h -= s.tau[b] * Rational(om[a][b]);
        CHECK(h == f.h[a]);
      }
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("vertical first return matches the interval exchange and the roof") {
  auto s = make({4, 3, 2, 1}, {q(1, 7), q(2, 7), q(3, 11), q(5, 13)}, {3, 1, -2, -4});
  REQUIRE(validate_theta(s).ok);
  auto h = roof_from_tau(s.perm, s.tau, s.basis);
  Rational total = 0;
  for (auto& l : s.lambda) total += l;
  for (int k = 0; k < 200; ++k) {
    Rational x = total * Rational(k, 200);
    auto [y, t] = vertical_first_return(s, x);
    CHECK(y == iet_apply(s.perm, s.lambda, x));
    CHECK(t == h[iet_interval(s.perm, s.lambda, x)]);
  }
}

TEST_CASE("polygon and triangulation of the torus") {
  auto bad = make({2, 1}, {q(1, 3), q(2, 3)}, {1, -1});
  CHECK_THROWS_AS(polygon_vertices(bad), DomainError);
  auto s = make({2, 1}, {q(3, 10), q(7, 10)}, {1, -1});
  auto m = polygon_vertices(s);
  REQUIRE(m.order.size() == 6);
  std::vector<std::string> labels;
  for (int i : m.order) labels.push_back(m.points[i].label());
  CHECK(labels == std::vector<std::string>{"R0", "R1", "S'1", "S1", "R'1", "R2"});
  CHECK(m.points[m.order[2]].y == QVector::scalar(q(-4, 7)));
  CHECK(m.points[m.order[3]].y == QVector::scalar(q(4, 7)));
  for (int i : m.order)
    if (m.points[i].kind == VertexKind::S)
      CHECK(m.points[i].x == iet_inverse(s.perm, s.lambda, m.points[m.r_index(1)].x));
    else if (m.points[i].kind == VertexKind::Sp)
      CHECK(m.points[i].x == iet_apply(s.perm, s.lambda, m.points[m.rp_index(1)].x));
  auto tri = triangulate(m);
  CHECK(tri.triangles.size() == 6);
  QVector sum(1);
  for (size_t t = 0; t < tri.triangles.size(); ++t) {
    CHECK(certified_sign(tri.triangle_area(t), s.basis) > 0);
    sum += tri.triangle_area(t);
  }
  CHECK(sum == m.polygon_area());
  CHECK(sum == area(s.lambda, roof_from_tau(s.perm, s.tau, s.basis)));
}
