#include "ietflow/geometry.hpp"

#include <cmath>

namespace ietflow {

template <class T>
Affine<T> Affine<T>::inverse() const {
  T d = det();
  if (d == T(0)) throw DomainError("affine map is singular");
  Affine r;
  r.m[0][0] = m[1][1] / d;
  r.m[0][1] = -m[0][1] / d;
  r.m[1][0] = -m[1][0] / d;
  r.m[1][1] = m[0][0] / d;
  r.t[0] = -(r.m[0][0] * t[0] + r.m[0][1] * t[1]);
  r.t[1] = -(r.m[1][0] * t[0] + r.m[1][1] * t[1]);
  return r;
}

template <class T>
Affine<T> Affine<T>::after(const Affine& g) const {
  Affine r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * g.m[0][j] + m[i][1] * g.m[1][j];
    r.t[i] = m[i][0] * g.t[0] + m[i][1] * g.t[1] + t[i];
  }
  return r;
}

template <class T>
T signed_area(const Polygon<T>& p) {
  T s(0);
  for (size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a.x * b.y - a.y * b.x;
  }
  return s / T(2);
}

template <class T>
T area(const Polygon<T>& p) {
  T s = signed_area(p);
  return s < T(0) ? T(-s) : s;
}

template <class T>
T area(const Triangle<T>& t) {
  T c = cross(t[0], t[1], t[2]) / T(2);
  return c < T(0) ? T(-c) : c;
}

template <class T>
Polygon<T> as_polygon(const Triangle<T>& t) {
  return {t[0], t[1], t[2]};
}

template <class T>
Triangle<T> ccw(Triangle<T> t) {
  if (cross(t[0], t[1], t[2]) < T(0)) std::swap(t[1], t[2]);
  return t;
}

template <class T>
Point<T> centroid(const Triangle<T>& t) {
  return {(t[0].x + t[1].x + t[2].x) / T(3), (t[0].y + t[1].y + t[2].y) / T(3)};
}

template <class T>
Polygon<T> map_polygon(const Affine<T>& a, const Polygon<T>& p) {
  Polygon<T> out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(a(v));
  return out;
}

template <class T>
Triangle<T> map_triangle(const Affine<T>& a, const Triangle<T>& t) {
  return {a(t[0]), a(t[1]), a(t[2])};
}

template <class T>
Affine<T> affine_from(const Triangle<T>& src, const Triangle<T>& dst) {
  // Linear part from the edge vectors at vertex 0.
  T ux = src[1].x - src[0].x, uy = src[1].y - src[0].y;
  T vx = src[2].x - src[0].x, vy = src[2].y - src[0].y;
  T d = ux * vy - uy * vx;
  if (d == T(0)) throw DomainError("affine map: degenerate source triangle");
  T px = dst[1].x - dst[0].x, py = dst[1].y - dst[0].y;
  T qx = dst[2].x - dst[0].x, qy = dst[2].y - dst[0].y;
  Affine<T> a;
  a.m[0][0] = (px * vy - qx * uy) / d;
  a.m[0][1] = (qx * ux - px * vx) / d;
  a.m[1][0] = (py * vy - qy * uy) / d;
  a.m[1][1] = (qy * ux - py * vx) / d;
  a.t[0] = dst[0].x - (a.m[0][0] * src[0].x + a.m[0][1] * src[0].y);
  a.t[1] = dst[0].y - (a.m[1][0] * src[0].x + a.m[1][1] * src[0].y);
  return a;
}

template <class T>
Polygon<T> clip_half_plane(const Polygon<T>& subject, const Point<T>& a, const Point<T>& b) {
  Polygon<T> in;
  in.reserve(subject.size() + 2);
  for (size_t i = 0; i < subject.size(); ++i) {
    const Point<T>& p = subject[i];
    const Point<T>& q = subject[(i + 1) % subject.size()];
    T sp = cross(a, b, p), sq = cross(a, b, q);
    bool pin = !(sp < T(0)), qin = !(sq < T(0));
    if (pin) in.push_back(p);
    if (pin != qin) {
      T s = sp / (sp - sq);
      in.push_back({p.x + (q.x - p.x) * s, p.y + (q.y - p.y) * s});
    }
  }
  if (in.size() < 3) in.clear();
  return in;
}

template <class T>
Polygon<T> clip(const Polygon<T>& subject, const Polygon<T>& convex) {
  if (convex.size() < 3) return {};
  bool reversed = signed_area(convex) < T(0);
  Polygon<T> out = subject;
  for (size_t e = 0; e < convex.size() && !out.empty(); ++e) {
    const Point<T>& a = convex[e];
    const Point<T>& b = convex[(e + 1) % convex.size()];
    out = reversed ? clip_half_plane(out, b, a) : clip_half_plane(out, a, b);
  }
  return out;
}

template <class T>
Polygon<T> clip(const Polygon<T>& subject, const Triangle<T>& region) {
  return clip(subject, as_polygon(region));
}

template <class T>
bool in_triangle(const Triangle<T>& t0, const Point<T>& p, const T& tol) {
  Triangle<T> t = ccw(t0);
  for (int e = 0; e < 3; ++e) {
    const auto& a = t[e];
    const auto& b = t[(e + 1) % 3];
    if (cross(a, b, p) < -tol) return false;
  }
  return true;
}

long double operator_norm_2x2(const std::array<std::array<long double, 2>, 2>& m) {
  long double s = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
  long double d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long double disc = s * s - 4 * d * d;
  if (disc < 0) disc = 0;
  return std::sqrt((s + std::sqrt(disc)) / 2);
}

Real operator_norm_2x2(const std::array<std::array<Real, 2>, 2>& m) {
  Real s = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
  Real d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Real disc = s * s - 4 * d * d;
  if (disc < 0) disc = 0;
  return sqrt((s + sqrt(disc)) / 2);
}

long double to_num(const Rational& q) { return to_long_double(q); }

template <class To, class From>
Point<To> convert(const Point<From>& p) {
  if constexpr (std::is_same_v<To, long double>) return {to_num(p.x), to_num(p.y)};
  else return {To(p.x), To(p.y)};
}

template <class To, class From>
Triangle<To> convert(const Triangle<From>& t) {
  return {convert<To>(t[0]), convert<To>(t[1]), convert<To>(t[2])};
}

template <class To, class From>
Affine<To> convert(const Affine<From>& a) {
  Affine<To> r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if constexpr (std::is_same_v<To, long double>) r.m[i][j] = to_num(a.m[i][j]);
      else r.m[i][j] = To(a.m[i][j]);
    }
    if constexpr (std::is_same_v<To, long double>) r.t[i] = to_num(a.t[i]);
    else r.t[i] = To(a.t[i]);
  }
  return r;
}

#define IETFLOW_GEOMETRY(T)                                                            \
  template struct Affine<T>;                                                           \
  template T signed_area(const Polygon<T>&);                                           \
  template T area(const Polygon<T>&);                                                  \
  template T area(const Triangle<T>&);                                                 \
  template Polygon<T> as_polygon(const Triangle<T>&);                                  \
  template Triangle<T> ccw(Triangle<T>);                                               \
  template Point<T> centroid(const Triangle<T>&);                                      \
  template Polygon<T> map_polygon(const Affine<T>&, const Polygon<T>&);                \
  template Triangle<T> map_triangle(const Affine<T>&, const Triangle<T>&);             \
  template Affine<T> affine_from(const Triangle<T>&, const Triangle<T>&);              \
  template Polygon<T> clip(const Polygon<T>&, const Triangle<T>&);                     \
  template Polygon<T> clip(const Polygon<T>&, const Polygon<T>&);                      \
  template Polygon<T> clip_half_plane(const Polygon<T>&, const Point<T>&, const Point<T>&); \
  template bool in_triangle(const Triangle<T>&, const Point<T>&, const T&);

IETFLOW_GEOMETRY(Rational)
IETFLOW_GEOMETRY(long double)

template Point<long double> convert<long double, Rational>(const Point<Rational>&);
template Triangle<long double> convert<long double, Rational>(const Triangle<Rational>&);
template Affine<long double> convert<long double, Rational>(const Affine<Rational>&);

} // namespace ietflow
