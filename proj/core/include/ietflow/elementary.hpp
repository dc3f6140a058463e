#pragma once

#include "ietflow/geometry.hpp"

#include <array>
#include <optional>

namespace ietflow {

// Piecewise affine homeomorphism of V = {(0,a),(a,0),(0,-a)} moving the
// splitting point y(h) = (eps a (1-|h|), h a) of the two halves onto the
// height (eps a, 0).  Pieces are C[i] -> Chat[i], i = 0..5.
template <class T>
struct ElementaryH {
  T h, eps, a;
  std::array<Triangle<T>, 6> C, Chat;
  std::array<Affine<T>, 6> piece, inverse;

  // First piece whose source contains p (tol widens the tests); nullopt
  // when p is outside V.
  std::optional<int> locate(const Point<T>& p, const T& tol = T(0)) const;
  std::optional<int> locate_image(const Point<T>& p, const T& tol = T(0)) const;
  Point<T> operator()(const Point<T>& p, const T& tol = T(0)) const;
  Point<T> apply_inverse(const Point<T>& p, const T& tol = T(0)) const;
  // Pieces whose image lies in the half y >= 0.
  bool image_upper(int i) const;
};

template <class T>
ElementaryH<T> elementary_H(const T& h, const T& eps, const T& a);

template <class T>
Triangle<T> canonical_V(const T& a);

// Closed forms of the six linear parts for h >= 0, used as a cross-check.
template <class T>
std::array<std::array<std::array<T, 2>, 2>, 6> closed_form_linear_parts(const T& h, const T& eps);

// Largest operator norm over the pieces and their inverses.
long double max_lipschitz(const ElementaryH<long double>& H);
Real max_lipschitz(const ElementaryH<Rational>& H);

// Sampled distance between H(h1) and H(h2) and between their inverses,
// over a grid of about `samples` points of V.
long double lipschitz_gap(long double h1, long double h2, long double eps, long double a,
                          size_t samples);

} // namespace ietflow
