#include "rslab/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::size_t kSegmentBytes = 1U << 18;

std::vector<std::uint32_t> simple_sieve(u64 limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 smallest_prime_factor(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return d;
  }
  return n;
}

}  // namespace

std::size_t PrimeTable::count_up_to(u64 x) const {
  if (x >= 0xFFFFFFFFULL) return primes_.size();
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(x)) -
      primes_.begin());
}

bool PrimeTable::contains(u64 n) const {
  if (n > limit_) return false;
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

double PrimeTable::von_mangoldt(u64 n) const {
  if (n < 2) return 0.0;
  for (std::uint32_t p : primes_) {
    const u64 pp = p;
    if (pp * pp > n) break;
    if (n % pp == 0) {
      while (n % pp == 0) n /= pp;
      return n == 1 ? std::log(static_cast<double>(pp)) : 0.0;
    }
  }
  if (limit_ * limit_ < n && !contains(n)) {
    throw CapacityError("PrimeTable::von_mangoldt: n=" + std::to_string(n) +
                        " exceeds limit^2 of the table");
  }
  return std::log(static_cast<double>(n));
}

PrimeTable sieve_primes(u64 limit) {
  if (limit == 0) throw DomainError("sieve_primes: limit must be >= 1");
  if (limit > kMaxSieveLimit) {
    throw CapacityError("sieve_primes: limit " + std::to_string(limit) +
                        " exceeds supported maximum " + std::to_string(kMaxSieveLimit));
  }
  PrimeTable table;
  table.limit_ = limit;
  const u64 root = isqrt(limit);
  const auto base = simple_sieve(root);
  table.primes_ = base;

  std::vector<unsigned char> segment(kSegmentBytes);
  for (u64 low = root + 1; low <= limit; low += kSegmentBytes) {
    const u64 high = std::min<u64>(low + kSegmentBytes - 1, limit);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::uint32_t p : base) {
      const u64 pp = p;
      if (pp * pp > high) break;
      u64 start = std::max<u64>(pp * pp, (low + pp - 1) / pp * pp);
      for (u64 j = start; j <= high; j += pp) segment[j - low] = 0;
    }
    for (u64 n = std::max<u64>(low, 2); n <= high; ++n) {
      if (segment[n - low]) table.primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return table;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimePower as_prime_power(u64 n) {
  if (n < 2) return {};
  const u64 p = smallest_prime_factor(n);
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return {};
  return {p, k};
}

double von_mangoldt(u64 n) {
  const auto pk = as_prime_power(n);
  return pk ? std::log(static_cast<double>(pk.prime)) : 0.0;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 multiplicative_order(i64 a, u64 m) {
  if (m == 0) throw DomainError("multiplicative_order: modulus must be positive");
  const i64 sm = static_cast<i64>(m);
  const u64 r = static_cast<u64>(((a % sm) + sm) % sm);
  if (gcd(r, m) != 1) {
    throw DomainError("multiplicative_order: gcd(" + std::to_string(a) + ", " +
                      std::to_string(m) + ") != 1");
  }
  if (m == 1) return 1;
  u64 phi = m;
  for (u64 q : prime_factors(m)) phi = phi / q * (q - 1);
  u64 order = phi;
  for (u64 q : prime_factors(phi)) {
    while (order % q == 0 && pow_mod(r, order / q, m) == 1) order /= q;
  }
  return order;
}

u64 least_primitive_root(u64 p) {
  if (!is_prime(p)) throw DomainError("least_primitive_root: " + std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool generator = true;
    for (u64 q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw DomainError("least_primitive_root: none found");
}

Complex unit_root(i64 num, i64 den) {
  if (den <= 0) throw DomainError("unit_root: denominator must be positive");
  const i64 r = ((num % den) + den) % den;
  if ((4 * r) % den == 0) {
    switch ((4 * r) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

Complex ipow(Complex z, u64 k) noexcept {
  Complex result{1.0, 0.0};
  while (k > 0) {
    if (k & 1U) result *= z;
    k >>= 1U;
    if (k > 0) z *= z;
  }
  return result;
}

Complex imaginary_power(double base, double tau) {
  if (tau == 0.0) return {1.0, 0.0};
  const double angle = tau * std::log(base);
  return {std::cos(angle), -std::sin(angle)};
}

Complex ensure_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ContractViolation(std::string(what) + ": non-finite result");
  }
  return z;
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    compensation_ += (sum_ - t) + v;
  } else {
    compensation_ += (v - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) noexcept {
  add(other.sum_);
  add(other.compensation_);
}

}  // namespace rslab
