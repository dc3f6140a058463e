#pragma once

#include "ietflow/numeric.hpp"

#include <compare>
#include <vector>

namespace ietflow {

// A real number written in a fixed formal basis b_1..b_m of rationally
// independent reals: sum c_i b_i with rational c_i.
class QVector {
public:
  QVector() = default;
  explicit QVector(size_t dim) : c_(dim) {}
  explicit QVector(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

  static QVector unit(size_t dim, size_t i, const Rational& scale = 1);
  static QVector scalar(const Rational& q) { return QVector(std::vector<Rational>{q}); }

  size_t dim() const { return c_.size(); }
  const Rational& operator[](size_t i) const { return c_[i]; }
  Rational& operator[](size_t i) { return c_[i]; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;

  QVector& operator+=(const QVector& o);
  QVector& operator-=(const QVector& o);
  QVector& operator*=(const Rational& s);
  QVector operator-() const;

  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  friend QVector operator*(QVector a, const Rational& s) { return a *= s; }
  friend QVector operator*(const Rational& s, QVector a) { return a *= s; }

  friend bool operator==(const QVector& a, const QVector& b);
  // Lexicographic on coefficients; only used to key exact containers.
  friend std::strong_ordering operator<=>(const QVector& a, const QVector& b);

private:
  std::vector<Rational> c_;
};

// Numeric realization of a formal basis: b_1 = 1, b_j = sqrt(p_{j-1}).
class FormalBasis {
public:
  FormalBasis() = default;
  explicit FormalBasis(size_t dim);
  // Named values: "1", "sqrt2", "sqrt3", ... or plain rationals.
  explicit FormalBasis(const std::vector<std::string>& names);

  size_t dim() const { return values_.size(); }
  const std::vector<Real>& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }

private:
  std::vector<Real> values_;
  std::vector<std::string> names_;
};

std::vector<unsigned> first_primes(size_t count);

size_t rank_over_Q(const std::vector<QVector>& vectors);
bool rationally_independent(const QVector& v1, const QVector& v2);
Real evaluate_numeric(const QVector& v, const std::vector<Real>& basis_values);
Real evaluate_numeric(const QVector& v, const FormalBasis& basis);

// Sign of the real number v denotes. Exact zero test; a nonzero vector
// whose value is below the working-precision floor raises PrecisionError.
int certified_sign(const QVector& v, const FormalBasis& basis);

std::string to_string(const QVector& v);

} // namespace ietflow
