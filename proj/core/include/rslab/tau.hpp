// tau.hpp
//
// Ramanujan's tau function from the q-expansion of
//   Delta(q) = q * prod_{n>=1} (1 - q^n)^24,
// and the level-1 cusp form eigenvalue table built from it.
//
// The 24th power is taken as J^8 with J = prod (1 - q^n)^3 =
// sum_j (-1)^j (2j+1) q^{j(j+1)/2} (Jacobi). For F = J^8 the identity
// J F' = 8 J' F gives the one-pass recurrence
//   m F_m = sum_{k>=1} (9k - m) J_k F_{m-k},
// which touches only the O(sqrt m) nonzero J_k. It is run modulo two
// 61/62-bit primes and the exact value recovered by CRT; |tau(n)| < 2^118
// for n <= 10^6, well inside the CRT range.

#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rslab/arithmetic.hpp"

namespace rslab {

__extension__ typedef __int128 Int128;

inline constexpr u64 kMaxTauLimit = 1'000'000ULL;

std::string to_string(Int128 v);
Int128 parse_int128(std::string_view text);

// tau(n) for 0 <= n <= limit (entry 0 is 0).
std::vector<Int128> ramanujan_tau_series(u64 limit);

// Hecke eigenvalues a(p) of a level-1 cusp form of weight k at all p <= limit.
class CuspFormTable {
 public:
  // Validates the Deligne bound |a(p)| <= 2 p^{(k-1)/2}; throws
  // ContractViolation on a table that breaks it.
  CuspFormTable(int weight, u64 limit, std::vector<std::uint32_t> primes,
                std::vector<Int128> eigenvalues);

  int weight() const noexcept { return weight_; }
  u64 limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  Int128 eigenvalue(u64 p) const;
  // lambda(p) = a(p) / p^{(k-1)/2}.
  double normalized(u64 p) const;

 private:
  std::size_t slot(u64 p) const;

  int weight_;
  u64 limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<Int128> eigenvalues_;
  std::vector<double> normalized_;
};

CuspFormTable ramanujan_tau_table(u64 limit);

// Plain text cache format: a header line "weight,limit" then "p,a(p)" rows.
void write_cusp_table(std::ostream& out, const CuspFormTable& table);
CuspFormTable read_cusp_table(std::istream& in);

}  // namespace rslab
