#include "rslab/pnt.hpp"

#include <algorithm>
#include <cmath>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

// Sums term(i) for i in [0, count) in fixed blocks, combined in order.
template <typename Term>
Complex blocked_sum(std::size_t count, int threads, Term&& term) {
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<CompensatedComplexSum> partial(blocks);
  parallel_chunks(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(count, (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) partial[b].add(term(i));
  });
  CompensatedComplexSum total;
  for (const auto& block : partial) total.add(block);
  return total.value();
}

std::size_t entries_up_to(const CoefficientStream& stream, double x) {
  const auto it = std::upper_bound(stream.entries.begin(), stream.entries.end(), x,
                                   [](double v, const StreamEntry& e) { return v < static_cast<double>(e.n); });
  return static_cast<std::size_t>(it - stream.entries.begin());
}

void check_within(const CoefficientStream& stream, double x, const char* who) {
  if (x > static_cast<double>(stream.limit)) {
    throw CapacityError(std::string(who) + ": x beyond stream limit " + std::to_string(stream.limit));
  }
}

}  // namespace

Complex partial_sum(const CoefficientStream& stream, double x, int threads) {
  check_within(stream, x, "partial_sum");
  const std::size_t count = entries_up_to(stream, x);
  return blocked_sum(count, threads, [&](std::size_t i) {
    const auto& e = stream.entries[i];
    return std::log(static_cast<double>(e.p)) * e.value;
  });
}

Complex weighted_partial_sum(const CoefficientStream& stream, double x, int threads) {
  check_within(stream, x, "weighted_partial_sum");
  if (x <= 0.0) return {0.0, 0.0};
  const std::size_t count = entries_up_to(stream, x);
  return blocked_sum(count, threads, [&](std::size_t i) {
    const auto& e = stream.entries[i];
    const double weight = 1.0 - static_cast<double>(e.n) / x;
    return weight * std::log(static_cast<double>(e.p)) * e.value;
  });
}

Complex main_term(double x, double tau) {
  if (!(x > 0.0)) throw DomainError("main_term: x must be positive");
  const double phase = tau * std::log(x);
  return x * Complex{std::cos(phase), std::sin(phase)} / Complex{1.0, tau};
}

Complex split_restricted_sum(const RankinPair& pair, double x, SplitMode mode, int threads) {
  if (mode == SplitMode::compositum_EF && pair.mode() != RankinPair::Mode::across_fields) {
    throw DomainError("split_restricted_sum: compositum mode needs a pair over two fields");
  }
  if (x < 2.0) return {0.0, 0.0};
  const u64 limit = static_cast<u64>(std::floor(x));
  if (limit > pair.table_limit()) {
    throw CapacityError("split_restricted_sum: x beyond the representation tables");
  }
  const auto primes = sieve_primes(limit);
  const auto& e = pair.first().field;
  const auto& f = pair.second().field;
  std::vector<std::uint32_t> split;
  for (const auto p : primes.primes()) {
    const bool ok = mode == SplitMode::field_E ? splits_completely(e, p)
                                               : splits_completely_in_compositum(e, f, p);
    if (ok) split.push_back(p);
  }
  return blocked_sum(split.size(), threads, [&](std::size_t i) {
    const u64 p = split[i];
    return std::log(static_cast<double>(p)) * pair.coefficient(p, 1);
  });
}

std::vector<double> hypothesis_h_diagnostic(const BaseChangedRep& bc, int k,
                                            std::span<const double> grid) {
  if (k < 2) throw DomainError("hypothesis_h_diagnostic: k must be >= 2");
  std::vector<double> out;
  if (grid.empty()) return out;
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw DomainError("hypothesis_h_diagnostic: grid must be ascending");
  }
  const u64 top = static_cast<u64>(std::max(2.0, std::floor(grid.back())));
  if (top > bc.descent.table_limit()) {
    throw CapacityError("hypothesis_h_diagnostic: grid beyond the representation table");
  }
  const auto primes = sieve_primes(top);
  CompensatedSum sum;
  std::size_t next = 0;
  for (const auto p : primes.primes()) {
    while (next < grid.size() && grid[next] < p) out.push_back(sum.value()), ++next;
    if (bc.field.is_ramified(p)) continue;
    const auto split = splitting_data(bc.field, p);
    const double log_p = std::log(static_cast<double>(p));
    double places = 0.0;
    for (const auto& place : base_change_satake(bc, p)) {
      places += std::norm(power_sum(place, static_cast<u64>(k)));
    }
    const double scale = std::exp(-static_cast<double>(k) * static_cast<double>(split.f) * log_p);
    sum.add(log_p * log_p * scale * places);
  }
  while (next < grid.size()) out.push_back(sum.value()), ++next;
  return out;
}

double high_power_tail(const RankinPair& pair, double x, int k_threshold) {
  if (k_threshold < 1) throw DomainError("high_power_tail: k_threshold must be >= 1");
  if (x < 4.0) return 0.0;
  const u64 limit = static_cast<u64>(std::floor(x));
  const u64 root = static_cast<u64>(std::floor(std::sqrt(x)));
  if (root < 2) return 0.0;
  const auto primes = sieve_primes(root);
  CompensatedSum sum;
  for (const auto p : primes.primes()) {
    const u64 step = pair.exponent_step(p);
    const double log_p = std::log(static_cast<double>(p));
    u64 n = p;
    for (u64 e = 1;; ++e) {
      if (e % step == 0 && e / step > static_cast<u64>(k_threshold)) {
        sum.add(std::abs(log_p * pair.coefficient(p, e)));
      }
      if (n > limit / p) break;
      n *= p;
    }
  }
  return sum.value();
}

std::vector<double> geometric_grid(double lo, double hi, double decades_per_step) {
  if (!(lo >= 1.0) || !(hi >= lo) || !(decades_per_step > 0.0)) {
    throw DomainError("geometric_grid: need 1 <= lo <= hi and a positive step");
  }
  std::vector<double> grid;
  const double start = std::log10(lo);
  const double stop = std::log10(hi) + 1e-9;
  for (int j = 0;; ++j) {
    const double e = start + decades_per_step * j;
    if (e > stop) break;
    const double x = std::round(std::pow(10.0, e));
    if (grid.empty() || x > grid.back()) grid.push_back(x);
  }
  return grid;
}

PartialSumReport make_report(const CoefficientStream& stream, std::span<const double> grid,
                             std::optional<double> tau0, int pole_order, int threads) {
  PartialSumReport report;
  report.grid.assign(grid.begin(), grid.end());
  for (std::size_t i = 1; i < report.grid.size(); ++i) {
    if (!(report.grid[i] > report.grid[i - 1])) throw DomainError("make_report: grid must be strictly increasing");
  }
  report.tau0 = tau0;
  report.pole_order = tau0 ? pole_order : 0;
  for (const double x : report.grid) {
    const Complex s = partial_sum(stream, x, threads);
    const Complex m = tau0 ? static_cast<double>(pole_order) * main_term(x, *tau0) : Complex{0.0, 0.0};
    report.sums.push_back(s);
    report.mains.push_back(m);
    report.abs_err.push_back(std::abs(s - m));
  }
  try {
    report.fitted_c = error_curve_fit(report).c;
  } catch (const FitError&) {
    report.fitted_c.reset();
  }
  return report;
}

CurveFit error_curve_fit(const PartialSumReport& report) {
  std::vector<double> u;
  std::vector<double> y;
  for (std::size_t i = 0; i < report.grid.size() && i < report.abs_err.size(); ++i) {
    const double x = report.grid[i];
    const double err = report.abs_err[i];
    if (x > 1.0 && err > 0.0 && std::isfinite(err)) {
      u.push_back(-std::sqrt(std::log(x)));
      y.push_back(std::log(err / x));
    }
  }
  if (u.size() < 4) throw FitError("error_curve_fit: need at least 4 grid points with nonzero error");
  const double n = static_cast<double>(u.size());
  double mu = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    my += y[i];
  }
  mu /= n;
  my /= n;
  double suu = 0.0;
  double suy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
  }
  if (suu <= 0.0) throw FitError("error_curve_fit: degenerate grid");
  CurveFit fit;
  fit.raw_slope = suy / suu;
  fit.c = std::max(0.0, fit.raw_slope);
  fit.intercept = my - fit.raw_slope * mu;
  double ss = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.raw_slope * u[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = u.size();
  return fit;
}

}  // namespace rslab
