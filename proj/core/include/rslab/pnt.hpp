// pnt.hpp
//
// Partial sums sum_{n<=x} Lambda(n) a(n) of a coefficient stream, the
// weighted variant with (1 - n/x), the pole main term x^{1+i tau}/(1+i tau),
// sums restricted to completely split primes, the Hypothesis H and
// high-power tail diagnostics, and a fit of |S - M|/x to exp(-c sqrt(log x)).
//
// Every reduction is split into fixed blocks of kReductionBlock stream
// entries, each summed with compensation and then combined in ascending
// order, so results are bit-identical for any worker count.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rslab/rankin.hpp"

namespace rslab {

inline constexpr std::size_t kReductionBlock = 4096;

Complex partial_sum(const CoefficientStream& stream, double x, int threads = 1);
Complex weighted_partial_sum(const CoefficientStream& stream, double x, int threads = 1);

// x^{1 + i tau} / (1 + i tau).
Complex main_term(double x, double tau);

enum class SplitMode { field_E, compositum_EF };

// sum over primes p <= x splitting completely (in E, or in both E and F) of
// log p * a(p).
Complex split_restricted_sum(const RankinPair& pair, double x, SplitMode mode, int threads = 1);

// Partial sums over p <= P, for each P in the ascending grid, of
//   (log p)^2 / p^{k f_p} * sum_{v|p} |sum_j alpha(v,j)^k|^2.
std::vector<double> hypothesis_h_diagnostic(const BaseChangedRep& bc, int k,
                                            std::span<const double> grid);

// sum |Lambda(n) a(n)| over n = p^{k f_p} <= x with k > k_threshold
// (f_p taken as 1 across fields).
double high_power_tail(const RankinPair& pair, double x, int k_threshold);

struct PartialSumReport {
  std::vector<double> grid;
  std::vector<Complex> sums;
  std::vector<Complex> mains;
  std::vector<double> abs_err;
  std::optional<double> fitted_c;
  std::optional<double> tau0;
  int pole_order = 0;
  std::map<std::string, std::string> metadata;
};

// Grid 10^{log10(lo) + step*j} for j = 0, 1, ... while <= hi (plus rounding
// slack), each point rounded to the nearest integer.
std::vector<double> geometric_grid(double lo, double hi, double decades_per_step = 0.5);

// Fills sums, main terms (pole_order * main_term, or 0 without tau0) and
// errors; fitted_c is set when the fit is well posed.
PartialSumReport make_report(const CoefficientStream& stream, std::span<const double> grid,
                             std::optional<double> tau0, int pole_order, int threads = 1);

struct CurveFit {
  double c = 0.0;          // slope clamped to >= 0
  double raw_slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   // RMS residual of the fit in log space
  std::size_t points = 0;
};

// Least squares of log(abs_err/x) on -sqrt(log x). FitError with fewer than
// four usable (nonzero-error) points.
CurveFit error_curve_fit(const PartialSumReport& report);

}  // namespace rslab
