#pragma once

#include "ietflow/pipeline.hpp"
#include "ietflow/transport.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace ietflow::cli {

using nlohmann::json;

// Bad command line or input file; exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Decimal strings carry their precision next to them, e.g.
// {"decimal": "1.25e-13", "bits": 64}.
std::string decimal(long double x);
json tagged(long double x);
json tagged(const Real& x);

json to_json(const Rational& q);
json to_json(const QVector& v);
json to_json(const LabeledPermutation& p);
json to_json(const SuspensionDatum& s);
json to_json(const FlowDatum& f);
json to_json(const StepFunction& f);
json to_json(const AtomicMeasure& m);
json to_json(const ApproxMeasure& m);
json to_json(const Point<Rational>& p);
json to_json(const Point<Num>& p);

Rational rational_from(const json& j);
QVector qvector_from(const json& j, size_t dim);
LabeledPermutation permutation_from(const json& j);
// Accepts the datum format written by to_json; "tau" entries may also be
// plain rationals when the basis is {1}.
SuspensionDatum suspension_from(const json& j);
std::vector<DensityCell> density_from(const json& j);

json read_json(const std::string& path);
std::string csv_field(const std::string& s);

} // namespace ietflow::cli
