#include "doctest.h"

#include "ietflow/permutation.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace ietflow;

namespace {

LabeledPermutation sig(std::vector<int> s) { return LabeledPermutation::from_sigma(s); }

// Rearrange the top intervals in bottom order and locate x's image.
Rational brute_force_image(const LabeledPermutation& p, const std::vector<Rational>& lam,
                           const Rational& x) {
  Rational left = 0;
  int a = -1;
  Rational offset;
  for (size_t i = 0; i < p.d(); ++i) {
    int s = p.top(i);
    if (x >= left && x < left + lam[s]) {
      a = s;
      offset = x - left;
      break;
    }
    left += lam[s];
  }
  REQUIRE(a >= 0);
  Rational start = 0;
  for (size_t i = 0; i < p.d(); ++i) {
    if (p.bottom(i) == a) return start + offset;
    start += lam[p.bottom(i)];
  }
  return -1;
}

} // namespace

TEST_CASE("irreducibility and symmetry") {
  CHECK(is_irreducible(sig({2, 1})));
  CHECK_FALSE(is_irreducible(sig({1, 2, 3})));
  CHECK(is_symmetric(sig({4, 3, 2, 1})));
  CHECK_FALSE(is_symmetric(sig({3, 1, 4, 2})));
  CHECK(is_symmetric(sig({2, 1})));
  for (int d = 2; d <= 6; ++d) {
    std::vector<int> s(d);
    for (int i = 0; i < d; ++i) s[i] = d - i;
    CHECK(is_irreducible(sig(s)));
  }
}

TEST_CASE("degeneracy tags") {
  auto t = degeneracy(sig({3, 4, 1, 2}));
  REQUIRE(t.has_value());
  CHECK(*t == Degeneracy::deg1);
  CHECK_FALSE(degeneracy(sig({4, 3, 2, 1})).has_value());
  CHECK_FALSE(degeneracy(sig({3, 1, 4, 2})).has_value());
  CHECK_THROWS_AS(degeneracy(sig({1, 2, 3})), DomainError);
}

TEST_CASE("translation matrix") {
  CHECK(translation_matrix(sig({2, 1})) == TranslationMatrix{{0, 1}, {-1, 0}});
  CHECK(translation_matrix(sig({3, 2, 1})) ==
        TranslationMatrix{{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}});
  auto om = translation_matrix(sig({3, 1, 4, 2}));
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = 0; b < 4; ++b) CHECK(om[a][b] == -om[b][a]);
}

TEST_CASE("iet against brute force") {
  auto swap = sig({2, 1});
  std::vector<Rational> lam{Rational(1, 3), Rational(2, 3)};
  CHECK(iet_apply(swap, lam, 0) == Rational(2, 3));
  CHECK(iet_apply(swap, lam, Rational(1, 2)) == Rational(1, 6));
  CHECK_THROWS_AS(iet_apply(swap, lam, 1), DomainError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + trial % 6;
    std::vector<int> s(d);
    std::iota(s.begin(), s.end(), 1);
    do std::shuffle(s.begin(), s.end(), rng);
    while (!is_irreducible(sig(s)));
    auto p = sig(s);
    std::vector<Rational> l;
    for (int i = 0; i < d; ++i) l.emplace_back(1 + rng() % 9, 1 + rng() % 7);
    if (trial % 5 == 0) l[rng() % d] = 0;
    Rational total = 0;
    for (auto& x : l) total += x;
    for (int k = 0; k < 30; ++k) {
      Rational x = total * Rational(static_cast<long>(rng() % 1000), 1000);
      Rational y = iet_apply(p, l, x);
      CHECK(y == brute_force_image(p, l, x));
      CHECK(iet_inverse(p, l, y) == x);
    }
  }
}

TEST_CASE("rauzy moves") {
  CHECK(rauzy_move(sig({2, 1}), RauzyKind::top).sigma() == std::vector<int>{2, 1});
  CHECK(rauzy_move(sig({2, 1}), RauzyKind::bottom).sigma() == std::vector<int>{2, 1});
  CHECK(rauzy_move(sig({3, 2, 1}), RauzyKind::top).sigma() == std::vector<int>{2, 3, 1});
  CHECK(rauzy_move(sig({3, 2, 1}), RauzyKind::bottom).sigma() == std::vector<int>{3, 1, 2});
}

TEST_CASE("rauzy classes") {
  CHECK(rauzy_class(sig({2, 1}), false).size() == 1);
  auto c = rauzy_class(sig({3, 2, 1}), false);
  CHECK(c == std::vector<SigmaKey>{{2, 3, 1}, {3, 1, 2}, {3, 2, 1}});
  auto c4 = rauzy_class(sig({4, 3, 2, 1}), false);
  CHECK(find_pierost(c4).sigma() == std::vector<int>{4, 3, 2, 1});
  CHECK(find_pierost(c).sigma() == std::vector<int>{3, 2, 1});
  for (const auto& member : c4) CHECK(rauzy_class(sig(member), false) == c4);
  CHECK_THROWS_AS(rauzy_class(sig({4, 3, 2, 1}), false, 3), DomainError);
}

TEST_CASE("every class up to d=7 has a pierost member and moves keep non-degeneracy") {
  for (size_t d = 2; d <= 7; ++d) {
    auto classes = all_rauzy_classes(d, false);
    for (const auto& cls : classes) {
      CHECK_NOTHROW(find_pierost(cls));
      if (d > 6) continue;
      bool degenerate = static_cast<bool>(degeneracy(sig(cls.front())));
      for (const auto& m : cls) CHECK(static_cast<bool>(degeneracy(sig(m))) == degenerate);
    }
  }
}

TEST_CASE("acceptable symbols") {
  CHECK_FALSE(find_acceptable_symbols(sig({6, 5, 4, 3, 2, 1})).has_value());
  CHECK_THROWS_AS(find_acceptable_symbols(sig({3, 1, 4, 2})), DomainError);
}

TEST_CASE("text round trip") {
  auto p = LabeledPermutation::parse("top: A B C / bottom: C B A");
  CHECK(p.sigma() == std::vector<int>{3, 2, 1});
  CHECK(LabeledPermutation::parse(p.text()) == p);
  CHECK(LabeledPermutation::parse("3 1 4 2").sigma() == std::vector<int>{3, 1, 4, 2});
}
