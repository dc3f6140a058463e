#include "ietflow/elementary.hpp"

#include <cmath>
#include <type_traits>

namespace ietflow {

namespace {

template <class T>
Point<T> flip(const Point<T>& p) {
  return {p.x, -p.y};
}

template <class T>
Triangle<T> flip(const Triangle<T>& t) {
  return {flip(t[0]), flip(t[1]), flip(t[2])};
}

// J A J with J = diag(1, -1).
template <class T>
Affine<T> flip(const Affine<T>& a) {
  Affine<T> r = a;
  r.m[0][1] = -a.m[0][1];
  r.m[1][0] = -a.m[1][0];
  r.t[1] = -a.t[1];
  return r;
}

template <class T>
bool degenerate(const Triangle<T>& t) {
  return cross(t[0], t[1], t[2]) == T(0);
}

template <class T>
ElementaryH<T> build_nonnegative(const T& h, const T& eps, const T& a) {
  ElementaryH<T> H{h, eps, a, {}, {}, {}, {}};
  const Point<T> o{T(0), T(0)}, top{T(0), a}, right{a, T(0)}, bottom{T(0), -a};
  const Point<T> y{eps * a * (T(1) - h), h * a};
  const Point<T> e{eps * a, T(0)};
  const T hh = h / (h + T(1));
  const Point<T> yhat{eps * a - hh * eps * a, -hh * a};
  H.C = {{{o, top, y}, {right, top, y}, {o, e, y}, {right, e, y}, {o, bottom, e}, {right, bottom, e}}};
  H.Chat = {{{o, top, e},
             {right, top, e},
             {o, e, yhat},
             {right, e, yhat},
             {o, bottom, yhat},
             {right, bottom, yhat}}};
  auto image = [&](const Point<T>& p) {
    if (p == y) return e;
    if (p == e) return yhat;
    return p;
  };
  for (int i = 0; i < 6; ++i) {
    if (degenerate(H.C[i])) {
      // Only at h = 0, where the piece has no area.
      H.piece[i] = Affine<T>{};
      H.inverse[i] = Affine<T>{};
      continue;
    }
    if constexpr (std::is_floating_point_v<T>) {
      // Solving from the vertices of the thin pieces C3, C4 cancels badly
      // for tiny h; the closed forms are well conditioned.
      H.piece[i].m = closed_form_linear_parts(h, eps)[i];
      const Point<T> fixed = i % 2 == 0 ? o : right;
      H.piece[i].t = {fixed.x - (H.piece[i].m[0][0] * fixed.x + H.piece[i].m[0][1] * fixed.y),
                      fixed.y - (H.piece[i].m[1][0] * fixed.x + H.piece[i].m[1][1] * fixed.y)};
    } else {
      Triangle<T> dst{image(H.C[i][0]), image(H.C[i][1]), image(H.C[i][2])};
      H.piece[i] = affine_from(H.C[i], dst);
    }
    H.inverse[i] = H.piece[i].inverse();
  }
  return H;
}

} // namespace

template <class T>
Triangle<T> canonical_V(const T& a) {
  return {Point<T>{T(0), a}, Point<T>{a, T(0)}, Point<T>{T(0), -a}};
}

template <class T>
ElementaryH<T> elementary_H(const T& h, const T& eps, const T& a) {
  if (!(h > T(-1) && h < T(1))) throw DomainError("elementary map: h must lie in (-1, 1)");
  if (!(eps > T(0) && eps < T(1))) throw DomainError("elementary map: eps must lie in (0, 1)");
  if (!(a > T(0))) throw DomainError("elementary map: a must be positive");
  if (!(h < T(0))) return build_nonnegative(h, eps, a);
  ElementaryH<T> H = build_nonnegative(T(-h), eps, a);
  H.h = h;
  for (int i = 0; i < 6; ++i) {
    H.C[i] = flip(H.C[i]);
    H.Chat[i] = flip(H.Chat[i]);
    H.piece[i] = flip(H.piece[i]);
    H.inverse[i] = flip(H.inverse[i]);
  }
  return H;
}

template <class T>
std::optional<int> ElementaryH<T>::locate(const Point<T>& p, const T& tol) const {
  for (int i = 0; i < 6; ++i)
    if (!degenerate(C[i]) && in_triangle(C[i], p, tol)) return i;
  return std::nullopt;
}

template <class T>
std::optional<int> ElementaryH<T>::locate_image(const Point<T>& p, const T& tol) const {
  for (int i = 0; i < 6; ++i)
    if (!degenerate(Chat[i]) && in_triangle(Chat[i], p, tol)) return i;
  return std::nullopt;
}

template <class T>
Point<T> ElementaryH<T>::operator()(const Point<T>& p, const T& tol) const {
  auto i = locate(p, tol);
  if (!i) throw DomainError("elementary map: point outside V");
  return piece[*i](p);
}

template <class T>
Point<T> ElementaryH<T>::apply_inverse(const Point<T>& p, const T& tol) const {
  auto i = locate_image(p, tol);
  if (!i) throw DomainError("elementary map: point outside V");
  return inverse[*i](p);
}

template <class T>
bool ElementaryH<T>::image_upper(int i) const {
  return (h < T(0)) != (i < 2);
}

template <class T>
std::array<std::array<std::array<T, 2>, 2>, 6> closed_form_linear_parts(const T& h, const T& e) {
  const T one(1);
  const T m = one - h, p = one + h, q = one - e;
  std::array<std::array<std::array<T, 2>, 2>, 6> r;
  r[0] = {{{one + h / m, T(0)}, {-h / (e * m), one}}};
  r[1] = {{{one - e * h / (m * q), -e * h / (m * q)}, {h / (m * q), one + h / (m * q)}}};
  r[2] = {{{one - h / p, T(2) * e / p}, {-h / (e * p), one - T(2) * h / p}}};
  r[3] = {{{one + e * h / (p * q), e * (T(2) + h - T(2) * e) / (p * q)},
           {h / (p * q), one - h * (one - T(2) * e) / (p * q)}}};
  r[4] = {{{one - h / p, T(0)}, {-h / (e * p), one}}};
  r[5] = {{{one + e * h / (p * q), -h * e / (p * q)}, {h / (p * q), one - h / (p * q)}}};
  return r;
}

long double max_lipschitz(const ElementaryH<long double>& H) {
  long double best = 0;
  for (int i = 0; i < 6; ++i) {
    best = std::max(best, operator_norm_2x2(H.piece[i].m));
    best = std::max(best, operator_norm_2x2(H.inverse[i].m));
  }
  return best;
}

Real max_lipschitz(const ElementaryH<Rational>& H) {
  Real best = 0;
  auto norm = [](const Affine<Rational>& f) {
    std::array<std::array<Real, 2>, 2> m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] = to_real(f.m[i][j]);
    return operator_norm_2x2(m);
  };
  for (int i = 0; i < 6; ++i) {
    Real u = norm(H.piece[i]), v = norm(H.inverse[i]);
    if (u > best) best = u;
    if (v > best) best = v;
  }
  return best;
}

long double lipschitz_gap(long double h1, long double h2, long double eps, long double a,
                          size_t samples) {
  auto H1 = elementary_H(h1, eps, a);
  auto H2 = elementary_H(h2, eps, a);
  const long double tol = 1e-15L * a * a;
  size_t n = std::max<size_t>(2, static_cast<size_t>(std::sqrt(static_cast<long double>(samples))));
  long double gap = 0;
  for (size_t i = 0; i <= n; ++i) {
    long double x = a * static_cast<long double>(i) / static_cast<long double>(n);
    long double half = a - x;
    for (size_t j = 0; j <= n; ++j) {
      long double y = -half + 2 * half * static_cast<long double>(j) / static_cast<long double>(n);
      Point<long double> p{x, y};
      auto u = H1(p, tol), v = H2(p, tol);
      gap = std::max(gap, std::hypot(u.x - v.x, u.y - v.y));
      u = H1.apply_inverse(p, tol);
      v = H2.apply_inverse(p, tol);
      gap = std::max(gap, std::hypot(u.x - v.x, u.y - v.y));
    }
  }
  return gap;
}

template struct ElementaryH<Rational>;
template struct ElementaryH<long double>;
template ElementaryH<Rational> elementary_H(const Rational&, const Rational&, const Rational&);
template ElementaryH<long double> elementary_H(const long double&, const long double&,
                                               const long double&);
template Triangle<Rational> canonical_V(const Rational&);
template Triangle<long double> canonical_V(const long double&);
template std::array<std::array<std::array<Rational, 2>, 2>, 6>
closed_form_linear_parts(const Rational&, const Rational&);
template std::array<std::array<std::array<long double, 2>, 2>, 6>
closed_form_linear_parts(const long double&, const long double&);

} // namespace ietflow
