#pragma once

#include "ietflow/qvector.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ietflow {

// alpha = l * [0; a_1, ..., a_N] on the circle R / lZ. Finite depth, so
// alpha is an exact rational.
class ContinuedFraction {
public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::vector<Integer> quotients, Rational length = 1);
  static ContinuedFraction repeated(long quotient, size_t depth, Rational length = 1);
  // Finite expansion of alpha / l for a rational 0 < alpha < l.
  static ContinuedFraction of_rotation(const Rational& alpha, const Rational& length);

  size_t depth() const { return a_.size(); }
  const std::vector<Integer>& quotients() const { return a_; }
  const Rational& length() const { return l_; }
  const Rational& alpha() const { return alpha_; }

  // n = 0..N with p_0 = 0, q_0 = 1.
  const Integer& p(size_t n) const { return p_.at(n); }
  const Integer& q(size_t n) const { return q_.at(n); }
  // |q_n alpha - p_n l|.
  Rational delta(size_t n) const;

private:
  std::vector<Integer> a_;
  Rational l_ = 1;
  Rational alpha_;
  std::vector<Integer> p_, q_;
};

// (p_n, q_n) for n = 1..N.
std::vector<std::pair<Integer, Integer>> convergents(const std::vector<Integer>& quotients);

// ||q alpha|| measured on the circle of length l.
Rational distance_to_lattice(const Integer& q, const ContinuedFraction& cf);

// Odd n <= N-1 with q_n ||q_n alpha|| / l inside [lo, hi].
std::vector<size_t> rigidity_indices(const ContinuedFraction& cf, const Rational& lo = Rational(1, 52),
                                     const Rational& hi = Rational(1, 25));

// Right-continuous piecewise constant function on R / lZ. Positions live on
// the grid (1/D)Z; the circle is [0, L) in grid units with L = l D. Break 0
// is always present; value i holds on [breaks[i], breaks[i+1]).
class StepFunction {
public:
  StepFunction() = default;
  static StepFunction constant(const Rational& length, const QVector& value);
  // Breakpoints in [0, l), any order; value i holds from breakpoint i up to
  // the next one.
  static StepFunction from_pieces(const Rational& length, const std::vector<Rational>& breaks,
                                  const std::vector<QVector>& values);

  const Rational& length() const { return length_; }
  const Integer& denominator() const { return den_; }
  const Integer& grid_length() const { return grid_; }
  const std::vector<Integer>& grid_breaks() const { return breaks_; }
  const std::vector<QVector>& values() const { return values_; }
  size_t pieces() const { return values_.size(); }
  size_t dim() const { return values_.empty() ? 0 : values_[0].dim(); }

  Rational breakpoint(size_t i) const { return Rational(breaks_[i], den_); }
  QVector operator()(const Rational& x) const;
  // Jumps value(right) - value(left) at the breakpoints, nonzero only.
  std::vector<std::pair<Rational, QVector>> jumps() const;
  QVector integral() const;

  // Same function on a finer grid; den must be a multiple of denominator().
  StepFunction refined(const Integer& den) const;

  friend bool operator==(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(const Rational& s, const StepFunction& f);

  // Internal constructor from sorted grid data; merges equal neighbours.
  static StepFunction from_grid(const Rational& length, const Integer& den, const Integer& grid,
                                std::vector<Integer> breaks, std::vector<QVector> values);
  // Sum of jumps placed at grid positions plus the value at 0.
  static StepFunction from_jumps(const Rational& length, const Integer& den, const Integer& grid,
                                 std::vector<std::pair<Integer, QVector>> jumps,
                                 const QVector& value_at_zero);

private:
  Rational length_;
  Integer den_ = 1, grid_;
  std::vector<Integer> breaks_;
  std::vector<QVector> values_;
};

// x -> f(x + s).
StepFunction shifted(const StepFunction& f, const Rational& s);

// f^{(n)}(x) = sum_{i<n} f(x + i alpha) for n > 0, -sum_{i=1}^{|n|} f(x - i alpha)
// for n < 0, 0 for n = 0.
StepFunction birkhoff_sum(const StepFunction& f, const Rational& alpha, long n,
                          size_t max_jumps = 50000000);

// sum_j -d_j chi_{U_j}, U_j = union_{i<q} T^{-i}[b_j, b_j + ||q alpha||), q = q_n.
StepFunction tower_difference(const StepFunction& f, const ContinuedFraction& cf, size_t n);

// Exact law of a step function: value -> total length.
struct AtomicMeasure {
  std::map<QVector, Rational> atoms;
  Rational total() const;
};

struct JointMeasure {
  std::map<std::pair<QVector, QVector>, Rational> atoms;
  Rational total() const;
};

AtomicMeasure distribution(const StepFunction& g);
JointMeasure joint_distribution(const StepFunction& g1, const StepFunction& g2);
AtomicMeasure negated(const AtomicMeasure& m);

// Law with floating masses normalized by l; locations stay exact.
struct ApproxMeasure {
  std::map<QVector, long double> atoms;
  long double total() const;
};

// Law of tower_difference(f, cf, n) by a streaming sweep in 128-bit fixed
// point, memory O(#jumps). With backward set, the law of 2f^(-q) - f^(-2q),
// i.e. the towers moved by 2q alpha carrying +d. Masses below 1e-24 (ties
// resolved off by rounding) are dropped.
ApproxMeasure tower_difference_law(const StepFunction& f, const ContinuedFraction& cf, size_t n,
                                   bool backward = false);

// Rokhlin towers union_{i<q_n} T^i[lo, hi) on the circle.
struct Tower {
  Rational lo, hi;
  Integer height;
  Rational alpha, length;

  bool contains(const Rational& x) const;
  Rational measure() const { return (hi - lo) * Rational(height); }
  // Floors mod l, in iterate order.
  std::vector<std::pair<Rational, Rational>> floors() const;
};

struct TowerPair {
  Tower V, W;
  Rational ratio;
};

// Bases [3 d_n, d_{n-1}/3) and [2 d_{n-1}/3, d_{n-1} - 3 d_n) with q_n floors.
TowerPair towers_VW(const ContinuedFraction& cf, size_t n);

} // namespace ietflow
