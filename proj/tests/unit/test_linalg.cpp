#include "doctest.h"

#include "ietflow/qvector.hpp"

#include <random>

using namespace ietflow;

namespace {

QVector qv(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return QVector(v);
}

// Plain Gaussian elimination over Q, row echelon with rational pivots.
size_t naive_rank(std::vector<std::vector<Rational>> m) {
  size_t rank = 0;
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("rank over Q examples") {
  CHECK(rank_over_Q({qv({1, 0}), qv({0, 1})}) == 2);
  CHECK(rank_over_Q({qv({2, 4}), qv({1, 2})}) == 1);
  CHECK(rank_over_Q({qv({1, 1, 0}), qv({0, 1, 1}), qv({1, 0, -1})}) == 2);
  CHECK_THROWS_AS(rank_over_Q({qv({1, 0}), qv({1, 0, 0})}), DomainError);
}

TEST_CASE("rank agrees with naive elimination") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), den(1, 4), shape(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    size_t rows = shape(rng), cols = shape(rng);
    std::vector<QVector> vs;
    std::vector<std::vector<Rational>> m;
    for (size_t r = 0; r < rows; ++r) {
      std::vector<Rational> row;
      for (size_t c = 0; c < cols; ++c) row.emplace_back(coef(rng), den(rng));
      // Make some rows dependent.
      if (r >= 2 && trial % 3 == 0)
        for (size_t c = 0; c < cols; ++c) row[c] = m[0][c] * Rational(r) - m[1][c];
      vs.emplace_back(row);
      m.push_back(row);
    }
    size_t expect = naive_rank(m);
    CHECK(rank_over_Q(vs) == expect);
    std::reverse(vs.begin(), vs.end());
    for (auto& v : vs) v *= Rational(-5, 3);
    CHECK(rank_over_Q(vs) == expect);
  }
}

TEST_CASE("rational independence") {
  CHECK(rationally_independent(qv({1, 0}), qv({0, 1})));
  CHECK_FALSE(rationally_independent(qv({1, 2}), qv({2, 4})));
  CHECK(rationally_independent(qv({1, 1, 0, 0}), qv({0, 1, 1, 0})));
  CHECK_FALSE(rationally_independent(qv({3, 1}), qv({3, 1})));
  CHECK_FALSE(rationally_independent(qv({3, 1}), qv({0, 0})));
}

TEST_CASE("numeric evaluation in the default basis") {
  FormalBasis b(2);
  CHECK(to_decimal(evaluate_numeric(qv({1, 0}), b), 10) == to_decimal(Real(1), 10));
  Real s2 = evaluate_numeric(qv({0, 1}), b);
  CHECK(abs(s2 * s2 - 2) < Real("1e-70"));
  Real v = evaluate_numeric(qv({2, -1}), b);
  CHECK(abs(v - (2 - boost::multiprecision::sqrt(Real(2)))) < Real("1e-70"));
  Real lin = evaluate_numeric(qv({3, 5}) * Rational(2) + qv({-1, 7}) * Rational(-3), b);
  Real sep = 2 * evaluate_numeric(qv({3, 5}), b) - 3 * evaluate_numeric(qv({-1, 7}), b);
  CHECK(abs(lin - sep) < Real("1e-70"));
}

TEST_CASE("certified sign") {
  FormalBasis b(3);
  CHECK(certified_sign(qv({0, 0, 0}), b) == 0);
  CHECK(certified_sign(qv({-1, 1, 0}), b) == 1);
  CHECK(certified_sign(qv({2, -1, 0}), b) == 1);
  CHECK(certified_sign(qv({-2, 0, 1}), b) == -1);
}

TEST_CASE("exact square roots") {
  CHECK(sqrt_rational(Rational(4, 9)) == Rational(2, 3));
  CHECK(sqrt_rational(parse_rational("4e-10")) == Rational(1, 50000));
  Rational r = sqrt_rational(Rational(2));
  CHECK(r * r < 2);
  CHECK((r + Rational(1, 1000000000000000LL)) * (r + Rational(1, 1000000000000000LL)) > 2);
}
