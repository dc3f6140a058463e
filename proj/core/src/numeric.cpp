#include "ietflow/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <iomanip>
#include <sstream>

namespace ietflow {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw DomainError("empty rational literal");
  bool neg = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  // mpz reads a leading 0 as an octal prefix.
  auto integer = [](const std::string& t) {
    size_t nz = t.find_first_not_of('0');
    return nz == std::string::npos ? Integer(0) : Integer(t.substr(nz));
  };
  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  int exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string::npos && body.find('/') == std::string::npos) {
    std::string ex = body.substr(e + 1);
    body = body.substr(0, e);
    bool eneg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) ex = ex.substr(1);
    if (!digits_only(ex) || ex.size() > 6) throw DomainError("bad exponent: " + s);
    exponent = std::stoi(ex) * (eneg ? -1 : 1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!digits_only(n) || !digits_only(d)) throw DomainError("bad rational literal: " + s);
    Integer den = integer(d);
    if (den == 0) throw DomainError("zero denominator: " + s);
    out = Rational(integer(n), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
      throw DomainError("bad decimal literal: " + s);
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(fp.size()));
    out = Rational(integer(ip + fp), scale);
  } else {
    if (!digits_only(body)) throw DomainError("bad rational literal: " + s);
    out = Rational(integer(body));
  }
  if (exponent != 0) {
    Rational p10(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(exponent))));
    out = exponent > 0 ? Rational(out * p10) : Rational(out / p10);
  }
  return neg ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Real to_real(const Rational& q) {
  return Real(Real(numerator(q)) / Real(denominator(q)));
}

long double to_long_double(const Rational& q) {
  return static_cast<long double>(to_real(q));
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Integer floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

Rational sqrt_rational(const Rational& q, int digits) {
  if (q < 0) throw DomainError("square root of a negative rational");
  Integer n = numerator(q), d = denominator(q);
  Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn == n && rd * rd == d) return Rational(rn, rd);
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits));
  // floor(sqrt(q) * scale) = isqrt(n * scale^2 / d)
  Integer t = (n * scale * scale) / d;
  return Rational(boost::multiprecision::sqrt(t), scale);
}

Rational to_rational(long double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value");
  int e = 0;
  long double m = std::frexp(x, &e);
  Integer mant(static_cast<long long>(std::llround(std::ldexp(m, 62))));
  Rational out(mant);
  int shift = e - 62;
  Integer p = boost::multiprecision::pow(Integer(2), static_cast<unsigned>(shift < 0 ? -shift : shift));
  return shift < 0 ? Rational(out / p) : Rational(out * p);
}

} // namespace ietflow
