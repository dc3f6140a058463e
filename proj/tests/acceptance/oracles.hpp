#pragma once

// Reference computations for the acceptance run. They are written from the
// definitions and share no code paths with the library routines they check.

#include "ietflow/circle.hpp"
#include "ietflow/permutation.hpp"
#include "ietflow/transport.hpp"

#include <map>
#include <vector>

namespace oracle {

using ietflow::QVector;
using ietflow::Rational;
using Sigma = std::vector<int>;  // 1-based images

bool irreducible(const Sigma& s);
bool symmetric(const Sigma& s);
// First of the four degeneracy conditions that holds, or 0.
int degenerate(const Sigma& s);
std::vector<Sigma> irreducibles(size_t d);

// Moves on canonical sigma: the loser jumps behind the winner.
Sigma rauzy_top(const Sigma& s);
Sigma rauzy_bottom(const Sigma& s);
Sigma reversal(const Sigma& s);
// Classes by breadth-first closure, members and classes sorted.
std::vector<std::vector<Sigma>> classes(size_t d, bool extended);

// Image of x by cutting [0, |lambda|) along the top row and laying the
// pieces down in bottom-row order.
Rational rearrange(const ietflow::LabeledPermutation& p, const std::vector<Rational>& lambda,
                   const Rational& x);
// Omega from differences of brute-force translations.
std::vector<std::vector<int>> omega(const ietflow::LabeledPermutation& p);

// Some 2x2 minor of the coefficient matrix is nonzero.
bool independent(const QVector& a, const QVector& b);

// Theta sign conditions on partial sums of tau along each row; mirrored
// reads the rows from the right end.
bool theta(const ietflow::LabeledPermutation& p, const std::vector<Rational>& tau);
bool theta_mirrored(const ietflow::LabeledPermutation& p, const std::vector<Rational>& tau);
// Shoelace area of the polygon with sides (lambda_a, tau_a).
Rational polygon_area(const ietflow::LabeledPermutation& p, const std::vector<Rational>& lambda,
                      const std::vector<Rational>& tau);

// alpha / l = [0; a_1, ..., a_N] and the convergent denominators q_0..q_N.
Rational cf_value(const std::vector<long>& quotients);
std::vector<ietflow::Integer> cf_denominators(const std::vector<long>& quotients);
std::vector<ietflow::Integer> cf_numerators(const std::vector<long>& quotients);

// Exact law of f^(2q) - 2 f^(q) and of 2 f^(-q) - f^(-2q) by locating
// every breakpoint and summing f along the orbit on each piece.
std::map<QVector, Rational> forward_law(const ietflow::StepFunction& f, const Rational& alpha, long q);
std::map<QVector, Rational> backward_law(const ietflow::StepFunction& f, const Rational& alpha, long q);

// Largest singular value from the eigenvalues of M^T M.
long double opnorm(const std::array<std::array<long double, 2>, 2>& m);

using ietflow::Num;
using Poly = std::vector<ietflow::Point<Num>>;
Num area(const Poly& p);
// Sutherland-Hodgman against a convex region of either orientation.
Poly clip(const Poly& subject, const Poly& region);

// Mass of the preimage of level-n triangle j under the first n stages,
// found by pulling the triangle back piece by piece.
Num pullback_mass(const ietflow::TriangleTransport& t, const std::vector<ietflow::DensityCell>& cells,
                  size_t n, size_t j);

}  // namespace oracle
