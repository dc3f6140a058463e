#include "ietflow/qvector.hpp"

#include <algorithm>

namespace ietflow {

namespace {

void check_dim(const QVector& a, const QVector& b) {
  if (a.dim() != b.dim()) throw DomainError("QVector dimension mismatch");
}

} // namespace

QVector QVector::unit(size_t dim, size_t i, const Rational& scale) {
  QVector v(dim);
  v[i] = scale;
  return v;
}

bool QVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

QVector& QVector::operator+=(const QVector& o) {
  check_dim(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

QVector& QVector::operator-=(const QVector& o) {
  check_dim(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

QVector& QVector::operator*=(const Rational& s) {
  for (auto& q : c_) q *= s;
  return *this;
}

QVector QVector::operator-() const {
  QVector r(*this);
  for (auto& q : r.c_) q = -q;
  return r;
}

bool operator==(const QVector& a, const QVector& b) {
  check_dim(a, b);
  return a.c_ == b.c_;
}

std::strong_ordering operator<=>(const QVector& a, const QVector& b) {
  check_dim(a, b);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] < b.c_[i]) return std::strong_ordering::less;
    if (b.c_[i] < a.c_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<unsigned> first_primes(size_t count) {
  std::vector<unsigned> ps;
  for (unsigned n = 2; ps.size() < count; ++n) {
    bool prime = true;
    for (unsigned p : ps) {
      if (p * p > n) break;
      if (n % p == 0) { prime = false; break; }
    }
    if (prime) ps.push_back(n);
  }
  return ps;
}

FormalBasis::FormalBasis(size_t dim) {
  auto ps = first_primes(dim > 0 ? dim - 1 : 0);
  for (size_t j = 0; j < dim; ++j) {
    if (j == 0) {
      values_.emplace_back(1);
      names_.emplace_back("1");
    } else {
      values_.push_back(boost::multiprecision::sqrt(Real(ps[j - 1])));
      names_.push_back("sqrt" + std::to_string(ps[j - 1]));
    }
  }
}

FormalBasis::FormalBasis(const std::vector<std::string>& names) : names_(names) {
  for (const auto& n : names) {
    if (n.rfind("sqrt", 0) == 0) {
      Rational r = parse_rational(n.substr(4));
      if (r <= 0) throw DomainError("basis square root of non-positive value: " + n);
      values_.push_back(boost::multiprecision::sqrt(to_real(r)));
    } else {
      values_.push_back(to_real(parse_rational(n)));
    }
  }
}

size_t rank_over_Q(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  size_t m = vectors.front().dim();
  if (m == 0) throw DomainError("QVector of dimension 0");
  for (const auto& v : vectors)
    if (v.dim() != m) throw DomainError("QVector dimension mismatch");

  // Clear denominators row by row, then fraction-free (Bareiss) elimination.
  std::vector<std::vector<Integer>> a;
  for (const auto& v : vectors) {
    Integer l = 1;
    for (size_t j = 0; j < m; ++j) l = lcm(l, denominator(v[j]));
    std::vector<Integer> row(m);
    for (size_t j = 0; j < m; ++j) row[j] = numerator(v[j]) * (l / denominator(v[j]));
    a.push_back(std::move(row));
  }
  size_t rows = a.size(), rank = 0;
  Integer prev = 1;
  for (size_t col = 0; col < m && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (size_t i = rank + 1; i < rows; ++i) {
      for (size_t j = col + 1; j < m; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

bool rationally_independent(const QVector& v1, const QVector& v2) {
  return rank_over_Q({v1, v2}) == 2;
}

Real evaluate_numeric(const QVector& v, const std::vector<Real>& basis_values) {
  if (basis_values.size() != v.dim()) throw DomainError("basis dimension mismatch");
  Real s = 0;
  for (size_t i = 0; i < v.dim(); ++i)
    if (v[i] != 0) s += to_real(v[i]) * basis_values[i];
  return s;
}

Real evaluate_numeric(const QVector& v, const FormalBasis& basis) {
  return evaluate_numeric(v, basis.values());
}

int certified_sign(const QVector& v, const FormalBasis& basis) {
  if (v.is_zero()) return 0;
  Real x = evaluate_numeric(v, basis);
  Real scale = 0;
  for (size_t i = 0; i < v.dim(); ++i)
    scale += boost::multiprecision::abs(to_real(v[i]) * basis.values()[i]);
  if (boost::multiprecision::abs(x) <= scale * Real("1e-70"))
    throw PrecisionError("sign of " + to_string(v) + " not certified at working precision");
  return x > 0 ? 1 : -1;
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

} // namespace ietflow
