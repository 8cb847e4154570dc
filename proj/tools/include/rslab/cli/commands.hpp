// commands.hpp
//
// One function per rslab subcommand. Each writes its artifacts (to the
// given path, or to `out` when the path is empty) and returns the exit
// status; errors propagate as rslab exceptions for main() to map.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rslab/cli/config.hpp"
#include "rslab/equivalence.hpp"
#include "rslab/pnt.hpp"

namespace rslab::cli {

using std::filesystem::path;

struct SplitOptions {
  u64 conductor = 5;
  u64 order = 2;
  u64 pmax = 100;
  path out;
};
int run_split(const SplitOptions& opt, std::ostream& out);

struct CoeffsOptions {
  path spec;
  u64 xmax = 100000;
  path out;
  int threads = 1;
};
int run_coeffs(const CoeffsOptions& opt, std::ostream& out);

enum class Restriction { none, split_E, split_EF };
Restriction parse_restriction(const std::string& text);

struct PntSumOptions {
  path spec;
  std::string grid = "1e3:1e6:geometric";
  std::string restrict = "none";
  path out;
  path summary;
  int threads = 1;
};

struct PntSumResult {
  PartialSumReport report;
  EquivalenceVerdict verdict;
  Json summary;
};

// The computation behind pnt-sum, shared with the acceptance driver. tau0
// and the pole order always come from the equivalence detector.
PntSumResult compute_pnt_sum(const RankinPair& pair, const std::vector<double>& grid,
                             Restriction restriction, int threads);
int run_pnt_sum(const PntSumOptions& opt, std::ostream& out);

struct FactorCheckOptions {
  path spec;
  u64 pmax = 10000;
  std::vector<std::string> s = {"1.5", "2", "2+1i"};
  double tol = 1e-10;
};
// Largest residual over unramified p <= pmax and every s.
double max_factorization_residual(const BaseChangedRep& bc, u64 pmax, const std::vector<Complex>& s);
int run_factor_check(const FactorCheckOptions& opt, std::ostream& out);

struct EquivOptions {
  path spec_a;
  path spec_b;
  path field_e;
  path field_f;
  double tol = kDefaultTwistTolerance;
  path out;
};
Json equivalence_report(const AutomorphicRep& a, const CyclicExtension& e, const AutomorphicRep& b,
                        const CyclicExtension& f, double tol);
int run_equiv(const EquivOptions& opt, std::ostream& out);

struct HypHOptions {
  path spec;
  int k = 2;
  std::string grid = "1e3:1e6:geometric";
  path out;
};
int run_hyp_h(const HypHOptions& opt, std::ostream& out);

// A base-changed representation from {"rep": .., "field": ..}; pair specs
// are accepted too, using "pi" and "field" (or "field_E").
BaseChangedRep parse_base_change(const SpecNode& spec);

}  // namespace rslab::cli
