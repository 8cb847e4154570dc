#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "rslab/arithmetic.hpp"
#include "rslab/errors.hpp"

namespace {

using namespace rslab;

bool is_prime_by_trial_division(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Plain unsegmented Eratosthenes over a byte array.
std::vector<std::uint32_t> reference_primes(u64 limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

u64 order_by_enumeration(i64 a, u64 m) {
  const u64 base = static_cast<u64>(((a % static_cast<i64>(m)) + static_cast<i64>(m)) %
                                    static_cast<i64>(m));
  u64 acc = base % m;
  for (u64 k = 1; k <= m; ++k) {
    if (acc == 1 % m) return k;
    acc = acc * base % m;
  }
  return 0;
}

TEST(Sieve, SmallLimits) {
  EXPECT_EQ(sieve_primes(1).size(), 0U);
  auto ten = sieve_primes(10);
  std::vector<std::uint32_t> got(ten.primes().begin(), ten.primes().end());
  EXPECT_EQ(got, (std::vector<std::uint32_t>{2, 3, 5, 7}));
  EXPECT_EQ(sieve_primes(100).size(), 25U);
}

TEST(Sieve, MatchesTrialDivisionUpTo1e5) {
  const auto table = sieve_primes(100000);
  std::size_t idx = 0;
  for (u64 n = 1; n <= 100000; ++n) {
    if (is_prime_by_trial_division(n)) {
      ASSERT_LT(idx, table.size());
      ASSERT_EQ(table[idx], n);
      ++idx;
    }
  }
  EXPECT_EQ(idx, table.size());
}

TEST(Sieve, SegmentBoundariesMatchPlainSieve) {
  // Limits straddle several 2^18-byte segments.
  for (u64 limit : {262143ULL, 262144ULL, 262145ULL, 1000003ULL, 3000000ULL}) {
    const auto table = sieve_primes(limit);
    const auto ref = reference_primes(limit);
    ASSERT_EQ(table.size(), ref.size()) << "limit " << limit;
    EXPECT_TRUE(std::equal(ref.begin(), ref.end(), table.primes().begin()));
  }
}

TEST(Sieve, KnownPrimeCounts) {
  EXPECT_EQ(sieve_primes(1000000).size(), 78498U);
  EXPECT_EQ(sieve_primes(10000000).size(), 664579U);
}

TEST(Sieve, RejectsOutOfRangeLimits) {
  EXPECT_THROW(sieve_primes(0), DomainError);
  EXPECT_THROW(sieve_primes(kMaxSieveLimit + 1), CapacityError);
}

TEST(Sieve, CountAndContains) {
  const auto table = sieve_primes(1000);
  EXPECT_EQ(table.count_up_to(100), 25U);
  EXPECT_EQ(table.count_up_to(1), 0U);
  EXPECT_TRUE(table.contains(997));
  EXPECT_FALSE(table.contains(999));
  EXPECT_FALSE(table.contains(1009));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (u64 n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(n), is_prime_by_trial_division(n)) << n;
  }
  EXPECT_TRUE(is_prime((1ULL << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(VonMangoldt, Values) {
  EXPECT_EQ(von_mangoldt(1), 0.0);
  EXPECT_DOUBLE_EQ(von_mangoldt(8), std::log(2.0));
  EXPECT_EQ(von_mangoldt(12), 0.0);
  EXPECT_DOUBLE_EQ(von_mangoldt(97), std::log(97.0));
  EXPECT_DOUBLE_EQ(von_mangoldt(3 * 3 * 3 * 3), std::log(3.0));
  const auto table = sieve_primes(1000);
  EXPECT_DOUBLE_EQ(table.von_mangoldt(125), std::log(5.0));
  EXPECT_EQ(table.von_mangoldt(1000), 0.0);
}

TEST(VonMangoldt, DivisorSumIsLog) {
  for (u64 n = 1; n <= 10000; ++n) {
    double sum = 0.0;
    for (u64 d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      sum += von_mangoldt(d);
      if (d * d != n) sum += von_mangoldt(n / d);
    }
    ASSERT_NEAR(sum, std::log(static_cast<double>(n)), 1e-12) << n;
  }
}

TEST(PrimePowers, Decomposition) {
  EXPECT_FALSE(as_prime_power(1));
  EXPECT_FALSE(as_prime_power(12));
  const auto pp = as_prime_power(1024);
  EXPECT_EQ(pp.prime, 2U);
  EXPECT_EQ(pp.exponent, 10);
  EXPECT_EQ(as_prime_power(7).exponent, 1);
}

TEST(MultiplicativeOrder, Examples) {
  EXPECT_EQ(multiplicative_order(1, 7), 1U);
  EXPECT_EQ(multiplicative_order(2, 5), 4U);
  EXPECT_EQ(multiplicative_order(4, 5), 2U);
  EXPECT_EQ(multiplicative_order(-1, 7), 2U);
  EXPECT_THROW(multiplicative_order(2, 4), DomainError);
  EXPECT_THROW(multiplicative_order(6, 9), DomainError);
}

TEST(MultiplicativeOrder, MatchesEnumeration) {
  for (u64 m = 2; m <= 200; ++m) {
    for (i64 a = -static_cast<i64>(m); a < static_cast<i64>(m); ++a) {
      const u64 ua = static_cast<u64>(((a % static_cast<i64>(m)) + static_cast<i64>(m)) %
                                      static_cast<i64>(m));
      if (std::gcd(ua, m) != 1) continue;
      ASSERT_EQ(multiplicative_order(a, m), order_by_enumeration(a, m)) << a << " mod " << m;
    }
  }
}

TEST(MultiplicativeOrder, PrimitiveRoots) {
  EXPECT_EQ(least_primitive_root(5), 2U);
  EXPECT_EQ(least_primitive_root(7), 3U);
  EXPECT_EQ(least_primitive_root(41), 6U);
  for (u64 p : {3ULL, 11ULL, 13ULL, 101ULL, 9973ULL}) {
    EXPECT_EQ(multiplicative_order(static_cast<i64>(least_primitive_root(p)), p), p - 1);
  }
}

TEST(ComplexHelpers, UnitRootsExactAtQuarterTurns) {
  EXPECT_EQ(unit_root(0, 5), Complex(1.0, 0.0));
  EXPECT_EQ(unit_root(1, 4), Complex(0.0, 1.0));
  EXPECT_EQ(unit_root(2, 4), Complex(-1.0, 0.0));
  EXPECT_EQ(unit_root(-1, 4), Complex(0.0, -1.0));
  EXPECT_EQ(unit_root(3, 6), Complex(-1.0, 0.0));
  const Complex w = unit_root(1, 3);
  EXPECT_NEAR(std::abs(ipow(w, 3) - 1.0), 0.0, 1e-15);
}

TEST(ComplexHelpers, IntegerPowers) {
  EXPECT_EQ(ipow(Complex(0.0, 1.0), 4), Complex(1.0, 0.0));
  EXPECT_EQ(ipow(Complex(2.0, 0.0), 10), Complex(1024.0, 0.0));
  EXPECT_EQ(ipow(Complex(3.0, 1.0), 0), Complex(1.0, 0.0));
}

TEST(ComplexHelpers, ImaginaryPowerHasUnitModulus) {
  const Complex z = imaginary_power(2.0, 1.0);
  EXPECT_NEAR(z.real(), std::cos(std::log(2.0)), 1e-15);
  EXPECT_NEAR(z.imag(), -std::sin(std::log(2.0)), 1e-15);
  EXPECT_EQ(imaginary_power(7.0, 0.0), Complex(1.0, 0.0));
  EXPECT_THROW(ensure_finite(Complex(NAN, 0.0), "test"), ContractViolation);
}

TEST(CompensatedSum, BeatsNaiveOnCancellation) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}

TEST(CompensatedSum, ChebyshevSumAgreesWithLongDouble) {
  const auto table = sieve_primes(10000000);
  CompensatedSum s;
  long double ref = 0.0L;
  for (std::uint32_t p : table.primes()) {
    s.add(std::log(static_cast<double>(p)));
    ref += static_cast<long double>(std::log(static_cast<double>(p)));
  }
  EXPECT_NEAR(s.value(), static_cast<double>(ref), 1e-12 * static_cast<double>(ref));
}

TEST(CompensatedSum, MergingBlocksMatchesSinglePass) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(100000);
  for (auto& v : values) v = dist(rng) * std::pow(10.0, dist(rng) * 8);
  CompensatedSum whole;
  CompensatedSum left;
  CompensatedSum right;
  for (std::size_t i = 0; i < values.size(); ++i) {
    whole.add(values[i]);
    (i < values.size() / 2 ? left : right).add(values[i]);
  }
  left.add(right);
  EXPECT_NEAR(left.value(), whole.value(), 1e-15 * std::abs(whole.value()) + 1e-12);
}

TEST(ParallelChunks, EveryChunkRunsOnce) {
  for (int threads : {1, 3, 8}) {
    std::vector<int> hits(1000, 0);
    parallel_chunks(hits.size(), threads, [&](std::size_t c) { hits[c] += 1; });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST(ParallelChunks, PropagatesExceptions) {
  EXPECT_THROW(parallel_chunks(64, 4,
                               [](std::size_t c) {
                                 if (c == 17) throw DomainError("boom");
                               }),
               DomainError);
}

}  // namespace
