#pragma once

#include "ietflow/permutation.hpp"
#include "ietflow/qvector.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace ietflow {

// Polygonal parameters (pi, lambda, tau); lambda and tau are indexed by symbol.
struct SuspensionDatum {
  LabeledPermutation perm;
  std::vector<Rational> lambda;
  std::vector<QVector> tau;
  FormalBasis basis;
};

// Special-flow parameters (pi, lambda, h).
struct FlowDatum {
  LabeledPermutation perm;
  std::vector<Rational> lambda;
  std::vector<QVector> h;
  FormalBasis basis;
};

struct ThetaCheck {
  bool ok = true;
  std::string violation;
};

ThetaCheck validate_theta(const SuspensionDatum& s);
// The same conditions read from the right endpoint.
ThetaCheck validate_theta_mirrored(const SuspensionDatum& s);

std::vector<QVector> roof_from_tau(const LabeledPermutation& p, const std::vector<QVector>& tau,
                                   const FormalBasis& basis);
FlowDatum to_flow(const SuspensionDatum& s);

QVector area(const std::vector<Rational>& lambda, const std::vector<QVector>& h);

// Rows reversed and tau negated; h is unchanged by this reflection.
SuspensionDatum reflect(const SuspensionDatum& s);
FlowDatum reflect(const FlowDatum& f);

struct RvCase {
  RauzyKind kind;
  int winner;
  int loser;
};
// Case of the right induction; throws DomainError on equal last lengths.
RvCase rv_case_right(const LabeledPermutation& p, const std::vector<Rational>& lambda);

SuspensionDatum polygonal_rv_right(const SuspensionDatum& s);
FlowDatum polygonal_rv_right(const FlowDatum& f);
SuspensionDatum polygonal_rv_left(const SuspensionDatum& s);
FlowDatum polygonal_rv_left(const FlowDatum& f);

Real mod_distance(const SuspensionDatum& a, const SuspensionDatum& b);

// Vertical flow from (x, 0) through the polygon side identifications back
// to the base segment: returns (landing abscissa, elapsed time).
std::pair<Rational, QVector> vertical_first_return(const SuspensionDatum& s, const Rational& x);

enum class VertexKind { R, Rp, Q, Qp, S, Sp };

struct PolygonPoint {
  VertexKind kind;
  int index;
  Rational x;
  QVector y;
  bool top;
  std::string label() const;
};

struct PolygonModel {
  SuspensionDatum datum;
  // R_0..R_d, R'_1..R'_{d-1}, then Q_i, Q'_i, S_i, S'_i for i = 1..d-1.
  std::vector<PolygonPoint> points;
  // Indices of the vertex set (R, R', S, S') sorted by abscissa.
  std::vector<int> order;

  Real y_numeric(int i) const;
  int r_index(int i) const { return i; }
  int rp_index(int i) const;
  QVector polygon_area() const;
};

PolygonModel polygon_vertices(const SuspensionDatum& s);

struct Triangulation {
  PolygonModel model;
  // Counterclockwise triples of indices into model.points.
  std::vector<std::array<int, 3>> triangles;

  QVector triangle_area(size_t t) const;
};

Triangulation triangulate(const PolygonModel& model);

using Matrix2 = std::array<std::array<Real, 2>, 2>;

// Linear part of the affine map taking triangle t of a onto triangle t of b.
Matrix2 affine_comparison(const Triangulation& a, const Triangulation& b, size_t t);

} // namespace ietflow
