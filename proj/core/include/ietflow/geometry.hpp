#pragma once

#include "ietflow/numeric.hpp"

#include <array>
#include <vector>

namespace ietflow {

// Plane geometry over an exact (Rational) or floating (long double) field.
template <class T>
struct Point {
  T x, y;
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

template <class T>
using Polygon = std::vector<Point<T>>;

template <class T>
using Triangle = std::array<Point<T>, 3>;

template <class T>
struct Affine {
  std::array<std::array<T, 2>, 2> m{{{T(1), T(0)}, {T(0), T(1)}}};
  std::array<T, 2> t{T(0), T(0)};

  Point<T> operator()(const Point<T>& p) const {
    return {m[0][0] * p.x + m[0][1] * p.y + t[0], m[1][0] * p.x + m[1][1] * p.y + t[1]};
  }
  T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  Affine inverse() const;
  // this o g
  Affine after(const Affine& g) const;
};

template <class T>
T cross(const Point<T>& o, const Point<T>& a, const Point<T>& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Shoelace area, positive for counterclockwise order.
template <class T>
T signed_area(const Polygon<T>& p);
template <class T>
T area(const Polygon<T>& p);
template <class T>
T area(const Triangle<T>& t);

template <class T>
Polygon<T> as_polygon(const Triangle<T>& t);
template <class T>
Triangle<T> ccw(Triangle<T> t);
template <class T>
Point<T> centroid(const Triangle<T>& t);

template <class T>
Polygon<T> map_polygon(const Affine<T>& a, const Polygon<T>& p);
template <class T>
Triangle<T> map_triangle(const Affine<T>& a, const Triangle<T>& t);

// Unique affine map with src[i] -> dst[i]; throws on a degenerate source.
template <class T>
Affine<T> affine_from(const Triangle<T>& src, const Triangle<T>& dst);

// Sutherland-Hodgman: subject clipped by a convex region given as a
// triangle in either orientation.
template <class T>
Polygon<T> clip(const Polygon<T>& subject, const Triangle<T>& region);
// Same against any convex polygon.
template <class T>
Polygon<T> clip(const Polygon<T>& subject, const Polygon<T>& convex);
// Part of the subject on the left of the directed line a -> b.
template <class T>
Polygon<T> clip_half_plane(const Polygon<T>& subject, const Point<T>& a, const Point<T>& b);

// Closed triangle membership; tol widens every edge test.
template <class T>
bool in_triangle(const Triangle<T>& t, const Point<T>& p, const T& tol = T(0));

long double operator_norm_2x2(const std::array<std::array<long double, 2>, 2>& m);
Real operator_norm_2x2(const std::array<std::array<Real, 2>, 2>& m);

template <class To, class From>
Point<To> convert(const Point<From>& p);
template <class To, class From>
Triangle<To> convert(const Triangle<From>& t);
template <class To, class From>
Affine<To> convert(const Affine<From>& a);

long double to_num(const Rational& q);
inline long double to_num(long double x) { return x; }

} // namespace ietflow
