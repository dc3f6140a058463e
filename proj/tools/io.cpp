#include "io.hpp"

#include <charconv>
#include <fstream>
#include <limits>

namespace ietflow::cli {

std::string decimal(long double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json tagged(long double x) {
  return {{"decimal", decimal(x)}, {"bits", std::numeric_limits<long double>::digits}};
}

json tagged(const Real& x) {
  return {{"decimal", to_decimal(x, 40)}, {"bits", std::numeric_limits<Real>::digits}};
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const QVector& v) {
  json c = json::array();
  for (const auto& x : v.coeffs()) c.push_back(to_string(x));
  return {{"dim", v.dim()}, {"coeffs", c}};
}

json to_json(const LabeledPermutation& p) {
  json pi0 = json::object(), pi1 = json::object();
  for (size_t s = 0; s < p.d(); ++s) {
    pi0[p.alphabet()[s]] = p.pos0(static_cast<int>(s)) + 1;
    pi1[p.alphabet()[s]] = p.pos1(static_cast<int>(s)) + 1;
  }
  return {{"alphabet", p.alphabet()}, {"pi0", pi0}, {"pi1", pi1}, {"text", p.text()}};
}

namespace {

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json qvectors(const std::vector<QVector>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw UsageError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

} // namespace

json to_json(const SuspensionDatum& s) {
  return {{"perm", to_json(s.perm)},
          {"lambda", rationals(s.lambda)},
          {"tau", qvectors(s.tau)},
          {"basis", s.basis.names()}};
}

json to_json(const FlowDatum& f) {
  return {{"perm", to_json(f.perm)},
          {"lambda", rationals(f.lambda)},
          {"h", qvectors(f.h)},
          {"basis", f.basis.names()}};
}

json to_json(const StepFunction& f) {
  json breaks = json::array();
  for (size_t i = 0; i < f.pieces(); ++i) breaks.push_back(to_string(f.breakpoint(i)));
  return {{"length", to_string(f.length())}, {"breaks", breaks}, {"values", qvectors(f.values())}};
}

json to_json(const AtomicMeasure& m) {
  json a = json::array();
  for (const auto& [loc, mass] : m.atoms) a.push_back({{"location", to_json(loc)}, {"mass", to_string(mass)}});
  return a;
}

json to_json(const ApproxMeasure& m) {
  json a = json::array();
  for (const auto& [loc, mass] : m.atoms)
    a.push_back({{"location", to_json(loc)}, {"mass", tagged(mass)}});
  return a;
}

json to_json(const Point<Rational>& p) { return json::array({to_string(p.x), to_string(p.y)}); }
json to_json(const Point<Num>& p) { return json::array({decimal(p.x), decimal(p.y)}); }

Rational rational_from(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return parse_rational(j.dump());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("expected a rational, got " + j.dump());
}

QVector qvector_from(const json& j, size_t dim) {
  if (!j.is_object()) {
    if (dim != 1) throw UsageError("plain number where a vector of dimension " + std::to_string(dim) + " is needed");
    return QVector::scalar(rational_from(j));
  }
  const auto& c = field(j, "coeffs");
  if (!c.is_array() || c.size() != dim || (j.contains("dim") && j.at("dim") != dim))
    throw UsageError("vector has wrong dimension: " + j.dump());
  std::vector<Rational> v;
  for (const auto& x : c) v.push_back(rational_from(x));
  return QVector(std::move(v));
}

LabeledPermutation permutation_from(const json& j) {
  try {
    if (j.is_string()) return LabeledPermutation::parse(j.get<std::string>());
    if (j.is_array()) return LabeledPermutation::from_sigma(j.get<std::vector<int>>());
    const auto& alpha = field(j, "alphabet");
    auto names = alpha.get<std::vector<std::string>>();
    std::vector<int> top(names.size(), -1), bottom(names.size(), -1);
    for (size_t s = 0; s < names.size(); ++s) {
      int p0 = field(j, "pi0").at(names[s]).get<int>() - 1;
      int p1 = field(j, "pi1").at(names[s]).get<int>() - 1;
      if (p0 < 0 || p1 < 0 || p0 >= static_cast<int>(names.size()) || p1 >= static_cast<int>(names.size()))
        throw UsageError("position out of range for symbol " + names[s]);
      top[p0] = static_cast<int>(s);
      bottom[p1] = static_cast<int>(s);
    }
    return LabeledPermutation(names, top, bottom);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad permutation: ") + e.what());
  }
}

SuspensionDatum suspension_from(const json& j) {
  SuspensionDatum s;
  s.perm = permutation_from(field(j, "perm"));
  std::vector<std::string> names = {"1"};
  if (j.contains("basis")) names = j.at("basis").get<std::vector<std::string>>();
  try {
    s.basis = FormalBasis(names);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  for (const auto& x : field(j, "lambda")) s.lambda.push_back(rational_from(x));
  for (const auto& x : field(j, "tau")) s.tau.push_back(qvector_from(x, s.basis.dim()));
  if (s.lambda.size() != s.perm.d() || s.tau.size() != s.perm.d())
    throw UsageError("lambda and tau need one entry per symbol");
  return s;
}

std::vector<DensityCell> density_from(const json& j) {
  std::vector<DensityCell> cells;
  for (const auto& c : field(j, "cells")) {
    DensityCell cell;
    for (const auto& p : field(c, "polygon")) {
      if (!p.is_array() || p.size() != 2) throw UsageError("polygon vertex must be [x, y]");
      cell.shape.push_back({to_long_double(rational_from(p[0])), to_long_double(rational_from(p[1]))});
    }
    if (cell.shape.size() < 3) throw UsageError("cell polygon needs 3 vertices");
    cell.value = to_long_double(rational_from(field(c, "value")));
    cells.push_back(std::move(cell));
  }
  return cells;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

} // namespace ietflow::cli
