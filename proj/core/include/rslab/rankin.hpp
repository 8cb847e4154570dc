// rankin.hpp
//
// Rankin-Selberg coefficients over one cyclic field and over two fields
// (the base-change product), local Euler factors, the base-change
// factorization of the standard L-function, and coefficient streams.
//
// All coefficients are indexed by a prime power n = p^k. The second
// representation is always the conjugated one. Primes that ramify in a
// field contribute zero to every coefficient.

#pragma once

#include <string>
#include <vector>

#include "rslab/arithmetic.hpp"
#include "rslab/reps.hpp"

namespace rslab {

// sum_j alpha_j^k.
Complex power_sum(std::span<const Complex> parameters, u64 k) noexcept;

// a_rep(p^k) = sum_j alpha(p,j)^k; zero when n is not a prime power.
Complex standard_coefficient(const AutomorphicRep& rep, u64 p, u64 k);
Complex standard_coefficient(const AutomorphicRep& rep, u64 n);

// Coefficient of -L'/L(s, pi x pi'~) over their common field at p^k:
//   sum_{v|p} f (sum_j alpha(v,j)^{k/f}) (sum_i conj(alpha'(v,i))^{k/f})
// when f | k, else 0. DomainError if the fields differ.
Complex rs_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, u64 k);
Complex rs_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 n);

// Coefficient of the base-change product over E and F at p^k:
//   sum_{i<ell} sum_{j<q} a_{pi_Q eta^i}(p^k) conj(a_{pi'_Q psi^j}(p^k)).
Complex rs_bc_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, u64 k);
Complex rs_bc_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 n);

// Two routes to the same number at an unramified p:
//   place route: sum_{v|p} f sum_j alpha_pi(v,j)^k
//   twist route: sum_{a<ell} sum_j alpha_{pi_Q eta^a}(p,j)^{f k}
Complex place_power_sum(const BaseChangedRep& bc, u64 p, u64 k);
Complex twist_power_sum(const BaseChangedRep& bc, u64 p, u64 k);

// prod_{v|p} prod_{j,i} (1 - alpha(v,j) conj(alpha'(v,i)) p^{-f s})^{-1}.
// Requires Re s > 1 and p unramified; NumericalSingularityError if some
// |1 - z| < 1e-14.
Complex euler_factor(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, Complex s);

// prod_j (1 - alpha(p,j) p^{-s})^{-1} over Q.
Complex standard_local_factor(const AutomorphicRep& rep, u64 p, Complex s);
// prod_{v|p} prod_j (1 - alpha(v,j) p^{-f s})^{-1} over the field.
Complex base_change_local_factor(const BaseChangedRep& bc, u64 p, Complex s);

// |L_p(s, pi) - prod_{i<ell} L_p(s, pi_Q eta^i)|.
double factorization_residual(const BaseChangedRep& bc, u64 p, Complex s);

// sum_{n<=N} Lambda(n) a(n) n^{-s} for the same-field pair. Re s >= 1.1.
Complex truncated_log_derivative(const BaseChangedRep& pi, const BaseChangedRep& pi_prime,
                                 Complex s, u64 N);
// -d/ds log prod_{p<=N} L_p(s, pi x pi'~), differentiated factor by factor.
Complex euler_log_derivative(const BaseChangedRep& pi, const BaseChangedRep& pi_prime,
                             Complex s, u64 N);

// A pair whose coefficient sequence we sum: either both over one field, or
// the base-change product across two fields.
class RankinPair {
 public:
  enum class Mode { same_field, across_fields };

  static RankinPair same_field(BaseChangedRep pi, BaseChangedRep pi_prime);
  static RankinPair across_fields(BaseChangedRep pi, BaseChangedRep pi_prime);

  Mode mode() const noexcept { return mode_; }
  const BaseChangedRep& first() const noexcept { return pi_; }
  const BaseChangedRep& second() const noexcept { return pi_prime_; }

  // Coefficient at p^k (dispatches to rs_coefficient / rs_bc_coefficient).
  Complex coefficient(u64 p, u64 k) const;
  // Residue degree that divides every exponent carrying a nonzero
  // coefficient: f_p for same-field pairs, 1 across fields.
  u64 exponent_step(u64 p) const;

  bool ramified_at(u64 p) const noexcept;
  u64 table_limit() const noexcept;
  // gcd(ell, q) == 1; only meaningful across fields.
  bool coprime_degrees() const noexcept;
  std::string describe() const;

 private:
  RankinPair(Mode mode, BaseChangedRep pi, BaseChangedRep pi_prime);

  Mode mode_;
  BaseChangedRep pi_;
  BaseChangedRep pi_prime_;
  std::vector<AutomorphicRep> family_;
  std::vector<AutomorphicRep> family_prime_;
};

struct StreamEntry {
  u64 n = 0;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  Complex value;
};

// Nonzero coefficients a(n) of a pair at prime powers n <= limit, ascending n.
struct CoefficientStream {
  u64 limit = 0;
  std::vector<StreamEntry> entries;
};

// Generated per block of primes over `threads` workers; the result does not
// depend on the worker count.
CoefficientStream generate_stream(const RankinPair& pair, u64 limit, int threads = 1);

}  // namespace rslab
