#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rslab/errors.hpp"
#include "rslab/tau.hpp"

namespace {

using namespace rslab;

// tau(1..30) from a big-integer expansion of q prod (1 - q^n)^24.
const std::vector<long long> kTauPrefix = {
    1,        -24,       252,       -1472,    4830,      -6048,     -16744,    84480,
    -113643,  -115920,   534612,    -370944,  -577738,   401856,    1217160,   987136,
    -6905934, 2727432,   10661420,  -7109760, -4219488,  -12830688, 18643272,  21288960,
    -25499225, 13865712, -73279080, 24647168, 128406630, -29211840};

// Coefficients of prod_{n<=N} (1 - q^n)^24 mod m by direct multiplication,
// one linear factor at a time. Independent of the recurrence under test.
std::vector<u64> eta24_by_product(std::size_t n_max, u64 m) {
  std::vector<u64> c(n_max + 1, 0);
  c[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t k = n_max; k >= n; --k) c[k] = (c[k] + m - c[k - n]) % m;
    }
  }
  return c;
}

u64 reduce(Int128 v, u64 m) {
  const Int128 r = v % static_cast<Int128>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<Int128>(m) : r);
}

TEST(Tau, InitialValues) {
  const auto tau = ramanujan_tau_series(30);
  ASSERT_EQ(tau.size(), 31U);
  EXPECT_EQ(tau[0], 0);
  for (std::size_t n = 1; n <= 30; ++n) {
    EXPECT_EQ(tau[n], static_cast<Int128>(kTauPrefix[n - 1])) << n;
  }
}

TEST(Tau, MatchesProductExpansionModuloPrimes) {
  const std::size_t limit = 3000;
  const auto tau = ramanujan_tau_series(limit);
  for (u64 m : {1000000007ULL, 998244353ULL}) {
    const auto eta = eta24_by_product(limit - 1, m);
    for (std::size_t n = 1; n <= limit; ++n) {
      ASSERT_EQ(reduce(tau[n], m), eta[n - 1]) << "n=" << n << " mod " << m;
    }
  }
}

TEST(Tau, HeckeRelations) {
  const auto tau = ramanujan_tau_series(100000);
  EXPECT_EQ(tau[6], tau[2] * tau[3]);
  EXPECT_EQ(tau[4], tau[2] * tau[2] - (Int128(1) << 11));
  // Multiplicativity on coprime pairs.
  for (u64 m = 2; m <= 300; ++m) {
    for (u64 n = m + 1; m * n <= 100000; ++n) {
      if (gcd(m, n) != 1) continue;
      ASSERT_EQ(tau[m * n], tau[m] * tau[n]) << m << "*" << n;
    }
  }
  // tau(p^2) = tau(p)^2 - p^11.
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 47ULL, 97ULL, 307ULL}) {
    Int128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= static_cast<Int128>(p);
    ASSERT_EQ(tau[p * p], tau[p] * tau[p] - p11) << p;
  }
}

TEST(Tau, DeligneBoundAndNormalization) {
  const auto table = ramanujan_tau_table(100000);
  EXPECT_EQ(table.weight(), 12);
  EXPECT_NEAR(table.normalized(2), -24.0 / std::pow(2.0, 5.5), 1e-15);
  for (auto p : table.primes()) {
    ASSERT_LE(std::fabs(table.normalized(p)), 2.0) << p;
  }
}

TEST(Tau, RejectsCapacityAndUntabulatedPrimes) {
  EXPECT_THROW(ramanujan_tau_series(kMaxTauLimit + 1), CapacityError);
  const auto table = ramanujan_tau_table(100);
  EXPECT_THROW(table.normalized(101), CapacityError);
  EXPECT_THROW(table.eigenvalue(91), DomainError);
}

TEST(Tau, TableValidatesDeligneBound) {
  EXPECT_THROW(CuspFormTable(12, 3, {2, 3}, {Int128(-24), Int128(1000)}), ContractViolation);
  EXPECT_THROW(CuspFormTable(11, 3, {2}, {Int128(0)}), DomainError);
}

TEST(Tau, CacheRoundTrip) {
  const auto table = ramanujan_tau_table(5000);
  std::stringstream buffer;
  write_cusp_table(buffer, table);
  const auto back = read_cusp_table(buffer);
  EXPECT_EQ(back.weight(), table.weight());
  EXPECT_EQ(back.limit(), table.limit());
  ASSERT_EQ(back.primes().size(), table.primes().size());
  for (auto p : table.primes()) EXPECT_EQ(back.eigenvalue(p), table.eigenvalue(p));
}

TEST(Tau, Int128TextRoundTrip) {
  const Int128 big = static_cast<Int128>(123456789012345678LL) * 1000000007LL * -3;
  EXPECT_EQ(parse_int128(to_string(big)), big);
  EXPECT_EQ(to_string(Int128(0)), "0");
  EXPECT_EQ(to_string(Int128(-24)), "-24");
  EXPECT_THROW(parse_int128("12x"), DomainError);
}

}  // namespace
