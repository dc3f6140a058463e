#include "commands.hpp"

#include <fstream>
#include <iostream>

#ifndef IETFLOW_VERSION
#define IETFLOW_VERSION "unknown"
#endif

namespace ietflow::cli {

json manifest(const std::string& command, json parameters, json seeds) {
  return {{"command", command},
          {"parameters", std::move(parameters)},
          {"seeds", std::move(seeds)},
          {"precision",
           {{"rational", "exact (GMP)"},
            {"real", std::to_string(std::numeric_limits<Real>::digits) + "-bit MPFR"},
            {"transport", std::to_string(std::numeric_limits<long double>::digits) + "-bit long double"}}},
          {"version", IETFLOW_VERSION}};
}

void emit_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void emit(const Context& ctx, const json& j) { emit_text(ctx.out, j.dump(2) + "\n"); }

} // namespace ietflow::cli
