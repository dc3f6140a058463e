#pragma once

#include "ietflow/circle.hpp"
#include "ietflow/suspension.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ietflow {

// Lengths over the surviving symbols in the order (first top, a1, a2, last top).
using HatLengths = std::array<Rational, 4>;

struct HatDatum {
  SuspensionDatum full;   // d symbols, zero lengths off the hat alphabet
  FlowDatum flow;         // 4 symbols, h taken from the full translation matrix
  AcceptableSymbols symbols;
  std::array<int, 4> ambient; // hat symbol i -> symbol of the full alphabet
};

HatDatum reduce_to_hat(const LabeledPermutation& p, const AcceptableSymbols& s,
                       const HatLengths& lambda_hat, const std::vector<QVector>& tau,
                       const FormalBasis& basis, bool require_independent = true);

// Jumps of the rotation roof at beta1 and beta2 written through Omega tau.
std::pair<QVector, QVector> symbolic_jumps(const LabeledPermutation& p, const AcceptableSymbols& s,
                                           const std::vector<QVector>& tau);

struct RotationSpecialFlow {
  Rational length, alpha, beta1, beta2;
  StepFunction roof;
  QVector d_beta1, d_beta2, d_zero, d_back;  // d_back sits at l - alpha
  bool right_side = true;                     // false: left induction
  FlowDatum induced;
};

RotationSpecialFlow to_rotation_flow(const HatDatum& hat);
std::pair<QVector, QVector> jump_vectors(const RotationSpecialFlow& flow);

// (x, y, z, v) -> (x - v, v, y, z) and (x, y, z, v) -> (x+y+z+v, y+z+v, x+y, x+y+z).
std::array<Rational, 4> phi_map(const HatLengths& v);
std::array<Rational, 4> psi_map(const std::array<Rational, 4>& v);
// Inverse of psi o phi on the right-side domain: (l, alpha, b1, b2) -> lambda hat.
HatLengths hat_from_rotation(const Rational& l, const Rational& alpha, const Rational& b1,
                             const Rational& b2);

enum class Verdict { satisfied, not_satisfied, inconclusive };
const char* to_string(Verdict v);

struct AtomAnalysis {
  size_t index = 0;
  Integer q;
  Rational delta, epsilon;
  bool beta1_in_V = false, beta2_in_W = false, swapped = false;
  bool membership = false;
  // Exact laws when the step functions fit in memory; the normalized
  // fixed-point laws are always filled.
  bool exact = false;
  AtomicMeasure forward, backward;
  ApproxMeasure forward_normalized, backward_normalized;
  std::string backward_method;
  long double max_mass_error = 0;
  bool forward_matches_prediction = false;
  bool backward_is_negation = false;
  std::vector<QVector> dominant_forward, dominant_backward;
  // Closed-form masses at finite scale keyed by location.
  std::map<QVector, Rational> predicted;
};

AtomAnalysis atom_analysis(const RotationSpecialFlow& flow, const ContinuedFraction& cf,
                           std::optional<size_t> index, const Rational& window_lo,
                           const Rational& window_hi, size_t exact_cap = 2000000);

struct Verdicts {
  Verdict weak_mixing = Verdict::inconclusive;
  Verdict disjointness = Verdict::inconclusive;
  std::string weak_mixing_reason, disjointness_reason;
};

Verdicts verdicts(const AtomAnalysis& a);
// Same decision on explicit dominant atom sets.
Verdicts verdicts_from_atoms(const std::vector<QVector>& forward,
                             const std::vector<QVector>& backward, bool membership);

struct PipelineConfig {
  std::string permutation;
  std::optional<HatLengths> lambda_hat;
  std::optional<std::vector<QVector>> tau;
  std::vector<std::string> basis_names;  // empty: default 1, sqrt2, ...
  long cf_quotient = 25;
  size_t cf_depth = 40;
  long grid = 4096;
  unsigned long long seed = 1;
  Rational window_lo = Rational(1, 52), window_hi = Rational(1, 25);
  std::optional<size_t> rigidity_index;
  bool tau_dependent = false;
};

struct LambdaSearch {
  HatLengths lambda_hat;
  long grid = 0;
  unsigned long long seed = 0;
  size_t tried = 0;
};

struct TauSearch {
  std::vector<long> integer_part;
  Rational perturbation;
};

struct VerdictReport {
  PipelineConfig config;
  LabeledPermutation perm;
  AcceptableSymbols symbols{};
  std::optional<LambdaSearch> lambda_search;
  std::optional<TauSearch> tau_search;
  FormalBasis basis;
  std::vector<QVector> tau;
  HatDatum hat;
  RotationSpecialFlow flow;
  ContinuedFraction cf;
  std::vector<size_t> rigidity;
  bool jumps_independent = false;
  AtomAnalysis analysis;
  Verdicts verdict;
};

// Integer tau satisfying Theta for the zero-length pattern, then made
// rationally independent by adding c e_a in dimension d + 1.
std::pair<std::vector<QVector>, TauSearch> default_tau(const LabeledPermutation& p,
                                                       const std::vector<Rational>& lambda,
                                                       bool dependent);

LambdaSearch search_lambda_hat(const ContinuedFraction& cf, size_t index, long grid,
                               unsigned long long seed);

VerdictReport run_pipeline(const PipelineConfig& config);

} // namespace ietflow
