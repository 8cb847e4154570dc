#include "rslab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <tuple>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

constexpr double kPhaseSlack = 1e-6;
constexpr double kTauAgreement = 1e-9;
constexpr double kZeroSnap = 1e-12;

double wrap_phase(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

Complex determinant(std::span<const Complex> params) {
  Complex d{1.0, 0.0};
  for (const auto& a : params) d *= a;
  return d;
}

std::vector<Complex> sorted_rounded(std::span<const Complex> values, double grain) {
  std::vector<Complex> out(values.begin(), values.end());
  auto key = [grain](const Complex& z) {
    return std::make_tuple(std::llround(z.real() / grain), std::llround(z.imag() / grain));
  };
  std::sort(out.begin(), out.end(), [&](const Complex& a, const Complex& b) { return key(a) < key(b); });
  return out;
}

}  // namespace

double multiset_distance(std::span<const Complex> lhs, std::span<const Complex> rhs, double tol) {
  if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
  const double grain = tol / 10.0;
  const auto a = sorted_rounded(lhs, grain);
  const auto b = sorted_rounded(rhs, grain);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TwistDetection detect_twist_detailed(const AutomorphicRep& a, const AutomorphicRep& b,
                                     std::span<const u64> primes, double tol) {
  if (a.rank() != b.rank()) {
    throw DomainError("detect_twist: rank mismatch (" + std::to_string(a.rank()) + " vs " +
                      std::to_string(b.rank()) + ")");
  }
  if (primes.size() < 2) throw DomainError("detect_twist: need at least two test primes");
  if (!(tol > 0.0)) throw DomainError("detect_twist: tolerance must be positive");
  for (const u64 p : primes) {
    if (a.is_ramified_at(p) || b.is_ramified_at(p)) {
      throw RamifiedPlaceError("detect_twist: test prime " + std::to_string(p) + " is ramified");
    }
  }

  const double m = static_cast<double>(a.rank());
  std::vector<SatakeSet> sa;
  std::vector<SatakeSet> sb;
  for (const u64 p : primes) {
    sa.push_back(a.satake_at(p));
    sb.push_back(b.satake_at(p));
  }

  // Phase of det_B / det_A = -m tau log p (mod 2 pi) at primes with
  // nonvanishing determinants.
  std::vector<std::size_t> usable;
  for (std::size_t idx = 0; idx < primes.size(); ++idx) {
    const Complex da = determinant(sa[idx]);
    const Complex db = determinant(sb[idx]);
    if (std::abs(da) > 1e-6 && std::abs(db) > 1e-6) usable.push_back(idx);
  }
  std::sort(usable.begin(), usable.end(), [&](std::size_t x, std::size_t y) { return primes[x] < primes[y]; });

  std::vector<double> candidates;
  if (usable.empty()) {
    candidates.push_back(0.0);
  } else {
    const std::size_t first = usable.front();
    const double log_p = std::log(static_cast<double>(primes[first]));
    const double theta = std::arg(determinant(sb[first]) / determinant(sa[first]));
    const double period = 2.0 * std::numbers::pi / (m * log_p);
    const double base = -theta / (m * log_p);
    const auto kmax = static_cast<long>(std::ceil((kTwistSearchWindow + std::abs(base)) / period));
    for (long k = -kmax; k <= kmax; ++k) {
      double tau = base + period * static_cast<double>(k);
      if (std::abs(tau) > kTwistSearchWindow) continue;
      // Rounding in arg() leaves ~1e-17 where the exact shift is 0.
      if (std::abs(tau) < kZeroSnap) tau = 0.0;
      bool consistent = true;
      for (std::size_t u = 1; u < std::min<std::size_t>(usable.size(), 3); ++u) {
        const std::size_t idx = usable[u];
        const double lp = std::log(static_cast<double>(primes[idx]));
        const double th = std::arg(determinant(sb[idx]) / determinant(sa[idx]));
        if (std::abs(wrap_phase(-m * tau * lp - th)) > kPhaseSlack) {
          consistent = false;
          break;
        }
      }
      if (consistent) candidates.push_back(tau);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](double x, double y) { return std::abs(x) < std::abs(y); });
  }

  TwistDetection best;
  best.max_residual = std::numeric_limits<double>::infinity();
  for (const double tau : candidates) {
    double worst = 0.0;
    for (std::size_t idx = 0; idx < primes.size(); ++idx) {
      SatakeSet shifted = sa[idx];
      const Complex rot = imaginary_power(static_cast<double>(primes[idx]), tau);
      for (auto& z : shifted) z *= rot;
      worst = std::max(worst, multiset_distance(shifted, sb[idx], tol));
      if (worst > tol) break;
    }
    if (worst <= tol) {
      best.tau = tau;
      best.max_residual = worst;
      return best;
    }
    best.max_residual = std::min(best.max_residual, worst);
  }
  return best;
}

std::optional<double> detect_twist(const AutomorphicRep& a, const AutomorphicRep& b,
                                   std::span<const u64> primes, double tol) {
  return detect_twist_detailed(a, b, primes, tol).tau;
}

std::vector<u64> default_test_primes(const AutomorphicRep& a, const AutomorphicRep& b,
                                     const CyclicExtension& e, const CyclicExtension& f,
                                     std::size_t count) {
  const u64 limit = std::min(a.table_limit(), b.table_limit());
  std::vector<u64> out;
  for (u64 p = 2; out.size() < count; ++p) {
    if (p > limit) {
      throw CapacityError("default_test_primes: tables end before " + std::to_string(count) +
                          " unramified primes were found");
    }
    if (!is_prime(p)) continue;
    if (a.is_ramified_at(p) || b.is_ramified_at(p) || e.is_ramified(p) || f.is_ramified(p)) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<TwistMatch> twisted_pairs(const AutomorphicRep& pi, const CyclicExtension& e,
                                      const AutomorphicRep& pi_prime, const CyclicExtension& f,
                                      std::span<const u64> primes, double tol) {
  std::vector<TwistMatch> matches;
  const u64 ell = e.degree();
  const u64 q = f.degree();
  for (u64 i = 0; i < ell; ++i) {
    const auto lhs = twist(pi, e.twist_character(static_cast<i64>(i)), 0.0);
    for (u64 j = 0; j < q; ++j) {
      const auto rhs = twist(pi_prime, f.twist_character(static_cast<i64>(j)), 0.0);
      const auto found = detect_twist_detailed(lhs, rhs, primes, tol);
      if (found.tau) matches.push_back({i, j, *found.tau, found.max_residual});
    }
  }
  return matches;
}

GroupCheck pair_group_check(std::span<const TwistMatch> matches, u64 ell, u64 q) {
  GroupCheck check;
  check.count = matches.size();
  check.gcd = gcd(ell, q);
  if (matches.empty()) return check;

  std::set<u64> indices;
  for (const auto& m : matches) {
    if (!indices.insert(m.i).second) {
      check.unique_per_i = false;
      check.witnesses.push_back("i=" + std::to_string(m.i) + " matched more than one (j, tau)");
    }
    if (std::abs(m.tau - matches.front().tau) > kTauAgreement) {
      check.common_tau = false;
      check.witnesses.push_back("tau differs at (i=" + std::to_string(m.i) + ", j=" +
                                std::to_string(m.j) + ")");
    }
  }
  // Relabel so the first matched index is 0; the matched indices then form
  // a subgroup of Z/ell exactly when the original set is a coset of one.
  const u64 origin = matches.front().i % ell;
  std::set<u64> relabeled;
  for (const u64 x : indices) relabeled.insert((x + ell - origin) % ell);
  for (const u64 x : relabeled) {
    for (const u64 y : relabeled) {
      const u64 diff = (x + ell - y) % ell;
      if (!relabeled.contains(diff)) {
        check.subgroup = false;
        check.witnesses.push_back(std::to_string(x) + "-" + std::to_string(y) + " = " +
                                  std::to_string(diff) + " (mod " + std::to_string(ell) + ") missing");
      }
    }
  }
  if (check.gcd % check.count != 0) {
    check.divides_gcd = false;
    check.witnesses.push_back(std::to_string(check.count) + " matches do not divide gcd " +
                              std::to_string(check.gcd));
  }
  return check;
}

EquivalenceVerdict assess_pair(const RankinPair& pair, double tol) {
  const auto& first = pair.first();
  const auto& second = pair.second();
  const auto primes = default_test_primes(first.descent, second.descent, first.field, second.field);
  EquivalenceVerdict verdict;
  if (pair.mode() == RankinPair::Mode::same_field) {
    for (u64 i = 0; i < first.field.degree(); ++i) {
      const auto lhs = twist(first.descent, first.field.twist_character(static_cast<i64>(i)), 0.0);
      const auto found = detect_twist_detailed(lhs, second.descent, primes, tol);
      if (found.tau) verdict.matches.push_back({i, 0, *found.tau, found.max_residual});
    }
  } else {
    verdict.matches = twisted_pairs(first.descent, first.field, second.descent, second.field, primes, tol);
  }
  if (!verdict.matches.empty()) {
    const double tau = verdict.matches.front().tau;
    for (const auto& m : verdict.matches) {
      if (std::abs(m.tau - tau) > kTauAgreement) {
        throw ContractViolation("assess_pair: twisted pairs disagree on tau");
      }
    }
    verdict.tau0 = tau;
    verdict.pole_order = static_cast<int>(verdict.matches.size());
  }
  return verdict;
}

}  // namespace rslab
