// equivalence.hpp
//
// Detection of twisted equivalence B = A (x) |det|^{i tau} from Satake
// parameters on a finite set of unramified primes, the (i, j) scan over two
// descent families, and the subgroup/divisibility check on its output.
//
// Sign convention: a TwistMatch (i, j, tau) means
//   pi'_Q (x) psi^j  ~=  pi_Q (x) eta^i (x) |det|^{i tau},
// so tau is exactly the shift in the main term x^{1+i tau}/(1+i tau).

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rslab/rankin.hpp"

namespace rslab {

inline constexpr double kDefaultTwistTolerance = 1e-9;
// Candidate shifts are searched in |tau| <= kTwistSearchWindow.
inline constexpr double kTwistSearchWindow = 100.0;

struct TwistDetection {
  std::optional<double> tau;
  // Worst multiset mismatch of the reported tau (or of the best rejected
  // candidate when tau is empty; infinity if no candidate existed).
  double max_residual = 0.0;
};

// tau with satake(B, p) == satake(A, p) * p^{-i tau} as multisets for all
// given primes, or nothing. DomainError on rank mismatch or fewer than two
// primes, RamifiedPlaceError on a prime ramified for A or B.
TwistDetection detect_twist_detailed(const AutomorphicRep& a, const AutomorphicRep& b,
                                     std::span<const u64> primes,
                                     double tol = kDefaultTwistTolerance);
std::optional<double> detect_twist(const AutomorphicRep& a, const AutomorphicRep& b,
                                   std::span<const u64> primes,
                                   double tol = kDefaultTwistTolerance);

// Largest |difference| after sorting both multisets (rounded at tol/10).
double multiset_distance(std::span<const Complex> lhs, std::span<const Complex> rhs, double tol);

// First `count` primes unramified for both representations and both fields,
// within the representations' tables.
std::vector<u64> default_test_primes(const AutomorphicRep& a, const AutomorphicRep& b,
                                     const CyclicExtension& e, const CyclicExtension& f,
                                     std::size_t count = 25);

struct TwistMatch {
  u64 i = 0;
  u64 j = 0;
  double tau = 0.0;
  double max_residual = 0.0;
};

// All (i, j, tau) with pi'_Q psi^j ~= pi_Q eta^i |det|^{i tau}, ordered by
// (i, j). eta and ell come from E, psi and q from F.
std::vector<TwistMatch> twisted_pairs(const AutomorphicRep& pi, const CyclicExtension& e,
                                      const AutomorphicRep& pi_prime, const CyclicExtension& f,
                                      std::span<const u64> primes,
                                      double tol = kDefaultTwistTolerance);

struct GroupCheck {
  bool subgroup = true;       // {i - i_first} closed under subtraction mod ell
  bool divides_gcd = true;    // |matches| divides gcd(ell, q)
  bool unique_per_i = true;   // at most one (j, tau) per i
  bool common_tau = true;     // every tau equal (within 1e-9)
  u64 count = 0;
  u64 gcd = 1;
  std::vector<std::string> witnesses;

  bool pass() const noexcept { return subgroup && divides_gcd && unique_per_i && common_tau; }
};

GroupCheck pair_group_check(std::span<const TwistMatch> matches, u64 ell, u64 q);

struct EquivalenceVerdict {
  std::vector<TwistMatch> matches;
  std::optional<double> tau0;
  int pole_order = 0;
};

// Same field E: scans pi_Q eta^i against pi'_Q (j = 0). Across fields: the
// full twisted_pairs scan. pole_order counts the matching factor pairs.
EquivalenceVerdict assess_pair(const RankinPair& pair, double tol = kDefaultTwistTolerance);

}  // namespace rslab
