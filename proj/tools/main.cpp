#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

using namespace ietflow;
using namespace ietflow::cli;

int main(int argc, char** argv) {
  CLI::App app{"Interval exchanges, suspensions and measure transport"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--jobs,-j", ctx.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out,-o", ctx.out, "output file (default stdout)");
  app.add_flag("--verbose,-v", ctx.verbose, "timings on stderr");

  int code = 0;

  auto* perm = app.add_subcommand("perm", "permutation queries");
  perm->require_subcommand(1);
  std::string perm_text;
  auto* classify = perm->add_subcommand("classify", "irreducible, symmetric, degenerate, Omega");
  classify->add_option("permutation", perm_text)->required();
  classify->callback([&] { code = perm_classify(ctx, perm_text); });

  std::optional<std::string> class_text;
  std::optional<size_t> class_d, class_dmax;
  bool extended = false;
  size_t cap = 1000000;
  auto* cls = perm->add_subcommand("class", "Rauzy class of a permutation, or all classes of size d");
  cls->add_option("permutation", class_text);
  auto* opt_d = cls->add_option("--d", class_d, "enumerate all classes with d symbols");
  cls->add_option("--d-max", class_dmax, "enumerate d = 2..N")->excludes(opt_d);
  cls->add_flag("--extended", extended, "close under row reversal too");
  cls->add_option("--cap", cap, "class size limit");
  cls->callback([&] {
    if (!class_text && !class_d && !class_dmax)
      throw CLI::ValidationError("perm class", "give a permutation, --d or --d-max");
    code = perm_class(ctx, class_text, class_d, class_dmax, extended, cap);
  });

  auto* acc = perm->add_subcommand("acceptable", "acceptable symbols");
  acc->add_option("permutation", perm_text)->required();
  acc->callback([&] { code = perm_acceptable(ctx, perm_text); });

  std::string datum, csv;
  auto* sus = app.add_subcommand("suspend", "check a suspension datum and build its roof");
  sus->add_option("datum", datum, "SuspensionDatum JSON")->required()->check(CLI::ExistingFile);
  sus->add_option("--polygon-csv", csv, "write polygon vertices as CSV");
  sus->callback([&] { code = suspend(ctx, datum, csv); });

  std::string side = "right";
  size_t steps = 1;
  auto* rvc = app.add_subcommand("rv", "polygonal Rauzy-Veech steps");
  rvc->add_option("datum", datum, "SuspensionDatum JSON")->required()->check(CLI::ExistingFile);
  rvc->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  rvc->add_option("--steps", steps);
  rvc->callback([&] { code = rv(ctx, datum, side, steps); });

  auto* tri = app.add_subcommand("triangulate", "triangulate the suspension polygon");
  tri->add_option("datum", datum, "SuspensionDatum JSON")->required()->check(CLI::ExistingFile);
  tri->add_option("--csv", csv, "write vertices as CSV");
  tri->callback([&] { code = triangulate_cmd(ctx, datum, csv); });

  std::string alpha, length = "1", lo = "1/52", hi = "1/25";
  bool rigidity = false;
  auto* cfc = app.add_subcommand("cf", "continued fraction data of a rotation");
  cfc->add_option("--alpha", alpha, "partial quotients: \"25,25,3\" or \"25x40\"")->required();
  cfc->add_option("--length", length, "circle length");
  cfc->add_flag("--rigidity", rigidity, "odd indices with q ||q alpha|| in the window");
  cfc->add_option("--lo", lo);
  cfc->add_option("--hi", hi);
  cfc->callback([&] { code = cf(ctx, alpha, length, rigidity, lo, hi); });

  PipelineOptions popt;
  auto* pipe = app.add_subcommand("pipeline", "verdict pipeline");
  pipe->require_subcommand(1);
  auto* prun = pipe->add_subcommand("run", "run a pipeline config");
  prun->add_option("config", popt.config)->required()->check(CLI::ExistingFile);
  prun->add_option("--depth", popt.depth, "continued fraction depth");
  prun->add_flag("--tau-dependent", popt.tau_dependent, "use a rationally dependent tau");
  prun->add_option("--emit-distribution", popt.emit_distribution, "write atom tables as CSV");
  prun->callback([&] { code = pipeline_run(ctx, popt); });

  TransportOptions topt;
  auto* trans = app.add_subcommand("transport", "measure transport");
  trans->require_subcommand(1);
  auto* trun = trans->add_subcommand("run", "run a transport config");
  trun->add_option("config", topt.config)->required()->check(CLI::ExistingFile);
  trun->add_option("--depth", topt.depth, "bisection depth");
  trun->add_option("--homeo", topt.homeo, "write the homeomorphism pieces as JSON");
  trun->add_option("--homeo-depth", topt.homeo_depth, "stages to export");
  trun->add_option("--residuals", topt.residuals, "write the residual table as CSV");
  trun->callback([&] { code = transport_run(ctx, topt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
