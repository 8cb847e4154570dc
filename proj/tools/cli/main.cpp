#include <iostream>

#include <CLI11.hpp>

#include "rslab/cli/acceptance.hpp"
#include "rslab/cli/commands.hpp"

namespace {

using namespace rslab;
using namespace rslab::cli;

constexpr int kExitContract = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rslab: Rankin-Selberg coefficient streams, base change and PNT partial sums"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads; outputs do not depend on this")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Splitting table p,e,f,g of a cyclic field");
  split_cmd->add_option("--conductor", split.conductor, "Prime conductor")->required();
  split_cmd->add_option("--order", split.order, "Degree of the field")->capture_default_str();
  split_cmd->add_option("--pmax", split.pmax, "Largest prime listed")->capture_default_str();
  split_cmd->add_option("--out", split.out, "CSV output (default stdout)");

  CoeffsOptions coeffs;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Nonzero coefficients a(n), n <= xmax, of a pair");
  coeffs_cmd->add_option("--spec", coeffs.spec, "Pair spec JSON")->required()->check(CLI::ExistingFile);
  coeffs_cmd->add_option("--xmax", coeffs.xmax, "Largest n")->capture_default_str();
  coeffs_cmd->add_option("--out", coeffs.out, "CSV output (default stdout)");

  PntSumOptions pnt;
  auto* pnt_cmd = app.add_subcommand("pnt-sum", "Partial sums of Lambda(n) a(n) against the main term");
  pnt_cmd->add_option("--spec", pnt.spec, "Pair spec JSON")->required()->check(CLI::ExistingFile);
  pnt_cmd->add_option("--grid", pnt.grid, "lo:hi:geometric[:step], lo:hi:linear:count or a list")
      ->capture_default_str();
  pnt_cmd->add_option("--restrict", pnt.restrict, "none, split-E or split-EF")->capture_default_str();
  pnt_cmd->add_option("--out", pnt.out, "CSV output (default stdout)");
  pnt_cmd->add_option("--summary", pnt.summary, "Summary JSON output");

  FactorCheckOptions factor;
  auto* factor_cmd = app.add_subcommand("factor-check", "Base-change Euler factor factorization residuals");
  factor_cmd->add_option("--spec", factor.spec, "Base-change spec {rep, field} or pair spec")
      ->required()
      ->check(CLI::ExistingFile);
  factor_cmd->add_option("--pmax", factor.pmax, "Largest prime checked")->capture_default_str();
  factor_cmd->add_option("--s", factor.s, "Evaluation points such as 2 or 2+1i")->capture_default_str();
  factor_cmd->add_option("--tol", factor.tol, "Largest acceptable residual")->capture_default_str();

  EquivOptions equiv;
  auto* equiv_cmd = app.add_subcommand("equiv", "Twisted equivalence scan between two descents");
  equiv_cmd->add_option("--specA", equiv.spec_a, "Representation spec for pi")->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("--specB", equiv.spec_b, "Representation spec for pi'")->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("--fieldE", equiv.field_e, "Field spec for E (default Q)")->check(CLI::ExistingFile);
  equiv_cmd->add_option("--fieldF", equiv.field_f, "Field spec for F (default Q)")->check(CLI::ExistingFile);
  equiv_cmd->add_option("--tol", equiv.tol, "Multiset tolerance")->capture_default_str();
  equiv_cmd->add_option("--out", equiv.out, "JSON output (default stdout)");

  HypHOptions hyp;
  auto* hyp_cmd = app.add_subcommand("hyp-h", "Hypothesis H partial sums");
  hyp_cmd->add_option("--spec", hyp.spec, "Base-change spec {rep, field}")->required()->check(CLI::ExistingFile);
  hyp_cmd->add_option("--k", hyp.k, "Power k >= 2")->capture_default_str();
  hyp_cmd->add_option("--grid", hyp.grid, "Grid of cutoffs P")->capture_default_str();
  hyp_cmd->add_option("--out", hyp.out, "CSV output (default stdout)");

  std::filesystem::path acceptance_config = RSLAB_DEFAULT_ACCEPTANCE_CONFIG;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite and print a scoreboard");
  verify_cmd->add_option("--config", acceptance_config, "Acceptance thresholds")
      ->check(CLI::ExistingFile)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*split_cmd) return run_split(split, std::cout);
    coeffs.threads = threads;
    if (*coeffs_cmd) return run_coeffs(coeffs, std::cout);
    pnt.threads = threads;
    if (*pnt_cmd) return run_pnt_sum(pnt, std::cout);
    if (*factor_cmd) return run_factor_check(factor, std::cout);
    if (*equiv_cmd) return run_equiv(equiv, std::cout);
    if (*hyp_cmd) return run_hyp_h(hyp, std::cout);
    if (*verify_cmd) {
      return print_scoreboard(std::cout, run_acceptance(acceptance_config, threads)) ? 0 : kExitContract;
    }
  } catch (const CapacityError& e) {
    std::cerr << "rslab: capacity exceeded: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ConfigError& e) {
    std::cerr << "rslab: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "rslab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rslab: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitUsage;
}
