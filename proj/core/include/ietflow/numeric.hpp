#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ietflow {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// 256+ bits of mantissa; every numeric shadow in the library uses this.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80>,
    boost::multiprecision::et_off>;

// Raised when an input or a precondition is invalid.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a numeric sign cannot be certified at working precision.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.125" or "4e-10".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Real to_real(const Rational& q);
long double to_long_double(const Rational& q);
std::string to_decimal(const Real& x, int digits = 30);

Rational abs(const Rational& q);
int sign(const Rational& q);
Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer lcm(const Integer& a, const Integer& b);

// Exact square root when q is a perfect square, otherwise the nearest
// rational with denominator 10^digits from below.
Rational sqrt_rational(const Rational& q, int digits = 15);

// Exact value of a finite long double (up to 62 mantissa bits).
Rational to_rational(long double x);

} // namespace ietflow
