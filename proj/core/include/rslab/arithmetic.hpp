// arithmetic.hpp
//
// Prime generation, the von Mangoldt function, modular helpers and the
// compensated (Neumaier) accumulators every partial sum in rslab goes through.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace rslab {

using Complex = std::complex<double>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Largest sieve limit accepted by sieve_primes().
inline constexpr u64 kMaxSieveLimit = 1'000'000'000ULL;

// Immutable ascending list of all primes <= limit.
class PrimeTable {
 public:
  PrimeTable() = default;

  u64 limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

  // Number of primes <= x (x may exceed limit only up to limit).
  std::size_t count_up_to(u64 x) const;
  bool contains(u64 n) const;

  // Lambda(n) for n <= limit^2 using trial division by the table.
  double von_mangoldt(u64 n) const;

 private:
  friend PrimeTable sieve_primes(u64 limit);
  u64 limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

// Segmented sieve of Eratosthenes; memory is O(sqrt(limit) + segment).
// Throws CapacityError for limit > kMaxSieveLimit and DomainError for 0.
PrimeTable sieve_primes(u64 limit);

bool is_prime(u64 n);

// log p if n = p^k (k >= 1), else 0.
double von_mangoldt(u64 n);

// If n = p^k with p prime, k >= 1, returns {p, k}; otherwise {0, 0}.
struct PrimePower {
  u64 prime = 0;
  int exponent = 0;
  explicit operator bool() const noexcept { return prime != 0; }
};
PrimePower as_prime_power(u64 n);

u64 gcd(u64 a, u64 b);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

// Least k >= 1 with a^k == 1 (mod m). DomainError unless gcd(a, m) == 1.
u64 multiplicative_order(i64 a, u64 m);

// Least primitive root of the prime p.
u64 least_primitive_root(u64 p);

// Distinct prime factors of n, ascending.
std::vector<u64> prime_factors(u64 n);

// e^{2 pi i num/den}; exact at multiples of a quarter turn.
Complex unit_root(i64 num, i64 den);

// z^k by repeated squaring (no log/exp round trip).
Complex ipow(Complex z, u64 k) noexcept;

// p^{-i tau} = cos(tau log p) - i sin(tau log p).
Complex imaginary_power(double base, double tau);

// Throws ContractViolation if either component is NaN or infinite.
Complex ensure_finite(Complex z, const char* what);

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  void add(const CompensatedSum& other) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void add(const CompensatedComplexSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  Complex value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Runs body(chunk) for chunk in [0, chunks) over `threads` workers. Each
// chunk is processed exactly once; callers write results into per-chunk
// slots so the outcome never depends on scheduling.
template <typename Body>
void parallel_chunks(std::size_t chunks, int threads, Body&& body);

}  // namespace rslab

#include "rslab/detail/parallel_impl.hpp"
