#pragma once

#include "io.hpp"

#include <optional>
#include <string>

namespace ietflow::cli {

struct Context {
  size_t jobs = 1;
  bool verbose = false;
  std::string out;  // empty: stdout
};

// Header block of every output file. Worker count and timings are left
// out so that equal manifests give equal bytes.
json manifest(const std::string& command, json parameters, json seeds = json::object());

// Writes j to ctx.out (or stdout).
void emit(const Context& ctx, const json& j);
void emit_text(const std::string& path, const std::string& text);

// Each returns the process exit code.
int perm_classify(const Context& ctx, const std::string& text);
int perm_class(const Context& ctx, const std::optional<std::string>& text,
               std::optional<size_t> d, std::optional<size_t> d_max, bool extended, size_t cap);
int perm_acceptable(const Context& ctx, const std::string& text);

int suspend(const Context& ctx, const std::string& datum_path, const std::string& polygon_csv);
int rv(const Context& ctx, const std::string& datum_path, const std::string& side, size_t steps);
int triangulate_cmd(const Context& ctx, const std::string& datum_path, const std::string& csv);

int cf(const Context& ctx, const std::string& alpha, const std::string& length, bool rigidity,
       const std::string& lo, const std::string& hi);

struct PipelineOptions {
  std::string config;
  std::optional<size_t> depth;
  bool tau_dependent = false;
  std::string emit_distribution;
};
int pipeline_run(const Context& ctx, const PipelineOptions& opt);

struct TransportOptions {
  std::string config;
  std::optional<size_t> depth;
  std::string homeo;
  std::optional<size_t> homeo_depth;
  std::string residuals;
};
int transport_run(const Context& ctx, const TransportOptions& opt);

} // namespace ietflow::cli
