#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "rslab/errors.hpp"
#include "rslab/rankin.hpp"

namespace {

using namespace rslab;

// -zeta'(2)/zeta(2), evaluated with mpmath at 30 digits.
constexpr double kZetaLogDerivAt2 = 0.56996099309453280639986436002;

std::shared_ptr<const CuspFormTable> delta_table() {
  static auto table = std::make_shared<const CuspFormTable>(ramanujan_tau_table(100000));
  return table;
}

AutomorphicRep delta() { return AutomorphicRep::from_cusp_form(delta_table()); }
AutomorphicRep gl1(u64 q, u64 order) { return AutomorphicRep::from_character(make_character(q, order)); }

const CyclicExtension kQ = CyclicExtension::rationals();
const CyclicExtension kQuadratic5 = CyclicExtension::make(5, 2);
const CyclicExtension kCubic7 = CyclicExtension::make(7, 3);
const CyclicExtension kQuintic11 = CyclicExtension::make(11, 5);

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

TEST(StandardCoefficients, Values) {
  const auto one = AutomorphicRep::trivial();
  EXPECT_EQ(standard_coefficient(one, 8), Complex(1.0, 0.0));
  EXPECT_EQ(standard_coefficient(one, 12), Complex(0.0, 0.0));
  EXPECT_TRUE(near(standard_coefficient(gl1(5, 2), 4), 1.0, 1e-15));
  const double lambda2 = -24.0 / std::pow(2.0, 5.5);
  EXPECT_TRUE(near(standard_coefficient(delta(), 4), lambda2 * lambda2 - 2.0, 1e-13));
  EXPECT_TRUE(near(standard_coefficient(delta(), 2), lambda2, 1e-14));
}

TEST(RsCoefficient, TrivialOverQ) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  EXPECT_EQ(rs_coefficient(one, one, 2), Complex(1.0, 0.0));
  EXPECT_EQ(rs_coefficient(one, one, 1024), Complex(1.0, 0.0));
  EXPECT_EQ(rs_coefficient(one, one, 6), Complex(0.0, 0.0));
}

TEST(RsCoefficient, TrivialOverQuadraticField) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQuadratic5};
  EXPECT_EQ(rs_coefficient(one, one, 2), Complex(0.0, 0.0));   // 2 is inert, f = 2
  EXPECT_EQ(rs_coefficient(one, one, 4), Complex(2.0, 0.0));
  EXPECT_EQ(rs_coefficient(one, one, 11), Complex(2.0, 0.0));  // two places, f = 1
  EXPECT_EQ(rs_coefficient(one, one, 5), Complex(0.0, 0.0));   // ramified
}

TEST(RsCoefficient, FieldMismatchIsDomainError) {
  const BaseChangedRep a{AutomorphicRep::trivial(), kQuadratic5};
  const BaseChangedRep b{AutomorphicRep::trivial(), kCubic7};
  EXPECT_THROW(rs_coefficient(a, b, 2), DomainError);
  EXPECT_THROW(RankinPair::same_field(a, b), DomainError);
}

TEST(RsCoefficient, ChebyshevSumOverQ) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  // psi(1000) by direct enumeration of prime powers.
  double psi = 0.0;
  double via_coefficients = 0.0;
  for (u64 n = 2; n <= 1000; ++n) {
    const auto pk = as_prime_power(n);
    if (!pk) continue;
    psi += std::log(static_cast<double>(pk.prime));
    via_coefficients += von_mangoldt(n) * rs_coefficient(one, one, n).real();
  }
  EXPECT_NEAR(via_coefficients, psi, 1e-9);
}

TEST(RsBcCoefficient, Values) {
  const BaseChangedRep q_one{AutomorphicRep::trivial(), kQ};
  EXPECT_EQ(rs_bc_coefficient(q_one, q_one, 2), Complex(1.0, 0.0));
  EXPECT_EQ(rs_bc_coefficient(q_one, q_one, 10), Complex(0.0, 0.0));
  const BaseChangedRep e_one{AutomorphicRep::trivial(), kQuadratic5};
  // sum_i eta^i(p^k): 2 at a split prime, 0 at an inert prime to an odd power.
  EXPECT_TRUE(near(rs_bc_coefficient(e_one, q_one, 11), 2.0, 1e-15));
  EXPECT_TRUE(near(rs_bc_coefficient(e_one, q_one, 2), 0.0, 1e-15));
  EXPECT_TRUE(near(rs_bc_coefficient(e_one, q_one, 4), 2.0, 1e-15));
  EXPECT_EQ(rs_bc_coefficient(e_one, q_one, 5), Complex(0.0, 0.0));
  const BaseChangedRep f_one{AutomorphicRep::trivial(), kCubic7};
  EXPECT_EQ(rs_bc_coefficient(e_one, f_one, 7), Complex(0.0, 0.0));
}

TEST(RsBcCoefficient, SameFieldRelation) {
  // Over E = F the double sum is ell * a_{pi x pi'} and its j = 0 slice is
  // exactly a_{pi x pi'}.
  const auto primes = sieve_primes(3000);
  for (const auto& field : {kQuadratic5, kCubic7}) {
    const BaseChangedRep pi{gl1(13, 2), field};
    const BaseChangedRep pi_prime{delta(), field};
    const auto family = twist_family(pi);
    const double ell = static_cast<double>(field.degree());
    for (auto p : primes.primes()) {
      if (p == 13 || field.is_ramified(p)) continue;
      for (u64 k = 1; k <= 4; ++k) {
        const Complex rs = rs_coefficient(pi, pi_prime, p, k);
        ASSERT_TRUE(near(rs_bc_coefficient(pi, pi_prime, p, k), ell * rs, 1e-10)) << p << "^" << k;
        Complex slice{0.0, 0.0};
        for (const auto& rep : family) {
          slice += standard_coefficient(rep, p, k) * std::conj(standard_coefficient(pi_prime.descent, p, k));
        }
        ASSERT_TRUE(near(slice, rs, 1e-10)) << p << "^" << k;
      }
    }
  }
}

TEST(RsCoefficient, VanishesWhenResidueDegreeDoesNotDivide) {
  const auto primes = sieve_primes(10000);
  for (const auto& field : {kQuadratic5, kCubic7, kQuintic11}) {
    const BaseChangedRep pi{delta(), field};
    const BaseChangedRep pi_prime{gl1(13, 3), field};
    for (auto p : primes.primes()) {
      if (field.is_ramified(p)) continue;
      const u64 f = splitting_data(field, p).f;
      for (u64 k = 1; k <= 6; ++k) {
        if (k % f == 0) continue;
        ASSERT_EQ(rs_coefficient(pi, pi_prime, p, k), Complex(0.0, 0.0));
      }
    }
  }
}

TEST(RsCoefficient, DiagonalIsRealAndNonNegative) {
  const auto primes = sieve_primes(100000);
  const std::vector<BaseChangedRep> reps = {
      {delta(), kQuadratic5}, {gl1(7, 3), kCubic7}, {AutomorphicRep::trivial(), kQ}, {delta(), kQ}};
  for (const auto& pi : reps) {
    for (auto p : primes.primes()) {
      u64 n = p;
      for (u64 k = 1;; ++k) {
        const Complex a = rs_coefficient(pi, pi, p, k);
        ASSERT_GE(a.real(), -1e-12) << p << "^" << k;
        ASSERT_LE(std::fabs(a.imag()), 1e-12);
        if (n > 100000 / p) break;
        n *= p;
      }
    }
  }
}

TEST(RsCoefficient, CauchySchwarz) {
  const auto primes = sieve_primes(100000);
  for (const auto& field : {kQ, kQuadratic5}) {
    const BaseChangedRep pi{delta(), field};
    const BaseChangedRep pi_prime{gl1(7, 3), field};
    for (auto p : primes.primes()) {
      u64 n = p;
      for (u64 k = 1;; ++k) {
        const double lhs = std::abs(rs_coefficient(pi, pi_prime, p, k));
        const double rhs = std::sqrt(rs_coefficient(pi, pi, p, k).real() *
                                     rs_coefficient(pi_prime, pi_prime, p, k).real());
        ASSERT_LE(lhs, rhs + 1e-12) << p << "^" << k;
        if (n > 100000 / p) break;
        n *= p;
      }
    }
  }
}

TEST(PowerSums, PlaceAndTwistRoutesAgree) {
  const auto primes = sieve_primes(10000);
  const std::vector<BaseChangedRep> reps = {{delta(), kCubic7},
                                            {delta(), kQuadratic5},
                                            {AutomorphicRep::trivial(), kQuadratic5},
                                            {gl1(13, 4), kQuintic11},
                                            {twist(delta(), make_character(13, 3), 0.25), kCubic7}};
  for (const auto& bc : reps) {
    for (auto p : primes.primes()) {
      if (bc.field.is_ramified(p) || bc.descent.is_ramified_at(p)) continue;
      for (u64 k = 1; k <= 4; ++k) {
        const Complex place = place_power_sum(bc, p, k);
        const Complex twist_route = twist_power_sum(bc, p, k);
        ASSERT_LE(std::abs(place - twist_route), 1e-10 * std::max(1.0, std::abs(place)))
            << bc.descent.describe() << " p=" << p << " k=" << k;
      }
    }
  }
  EXPECT_THROW(twist_power_sum({AutomorphicRep::trivial(), kCubic7}, 7, 1), RamifiedPlaceError);
}

TEST(EulerFactor, TrivialOverQ) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  EXPECT_TRUE(near(euler_factor(one, one, 2, 2.0), 4.0 / 3.0, 1e-15));
}

TEST(EulerFactor, DistinctCharactersMatchDirectFormula) {
  const auto chi = make_character(5, 4);
  const auto psi = make_character(5, 2);
  const BaseChangedRep a{AutomorphicRep::from_character(chi), kQ};
  const BaseChangedRep b{AutomorphicRep::from_character(psi), kQ};
  for (u64 p : {2ULL, 3ULL, 7ULL, 11ULL, 101ULL}) {
    for (Complex s : {Complex(1.5, 0.0), Complex(2.0, 3.0)}) {
      const Complex expected =
          1.0 / (1.0 - chi(static_cast<i64>(p)) * std::conj(psi(static_cast<i64>(p))) *
                           std::pow(static_cast<double>(p), -s));
      EXPECT_TRUE(near(euler_factor(a, b, p, s), expected, 1e-14)) << p;
    }
  }
}

TEST(EulerFactor, DiagonalOnRealAxisIsRealAndAtLeastOne) {
  const BaseChangedRep pi{delta(), kQuadratic5};
  for (u64 p : {2ULL, 3ULL, 11ULL, 31ULL, 997ULL}) {
    const Complex v = euler_factor(pi, pi, p, 1.3);
    EXPECT_LE(std::fabs(v.imag()), 1e-12);
    EXPECT_GE(v.real(), 1.0);
  }
}

TEST(EulerFactor, Guards) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  EXPECT_THROW(euler_factor(one, one, 2, 1.0), ConvergenceDomainError);
  EXPECT_THROW(euler_factor(one, one, 2, Complex(0.5, 14.0)), ConvergenceDomainError);
  // An explicit table with alpha(2) = 4 puts the local factor on its pole at s = 2.
  auto table = std::make_shared<const SatakeTable>(
      1, std::vector<std::uint32_t>{2, 3}, std::vector<Complex>{Complex(4.0, 0.0), Complex(1.0, 0.0)});
  const BaseChangedRep bad{AutomorphicRep::from_table(table), kQ};
  EXPECT_THROW(euler_factor(bad, one, 2, 2.0), NumericalSingularityError);
  const BaseChangedRep e_one{AutomorphicRep::trivial(), kQuadratic5};
  EXPECT_THROW(euler_factor(e_one, e_one, 5, 2.0), RamifiedPlaceError);
}

TEST(Factorization, SplitPrimeIsExact) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQuadratic5};
  EXPECT_EQ(factorization_residual(one, 11, 2.0), 0.0);
  EXPECT_EQ(factorization_residual({AutomorphicRep::trivial(), kQ}, 2, 2.0), 0.0);
}

TEST(Factorization, InertPrimeOfQuadraticField) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQuadratic5};
  // (1 - 4^{-s})^{-1} = (1 - 2^{-s})^{-1} (1 + 2^{-s})^{-1}.
  EXPECT_TRUE(near(base_change_local_factor(one, 2, 2.0), 1.0 / (1.0 - 1.0 / 16.0), 1e-15));
  EXPECT_LE(factorization_residual(one, 2, 2.0), 1e-15);
}

TEST(Factorization, RandomPrimesForDelta) {
  std::mt19937 rng(5);
  const auto primes = sieve_primes(1000);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  const BaseChangedRep bc{delta(), kCubic7};
  for (int trial = 0; trial < 200; ++trial) {
    const u64 p = primes[pick(rng)];
    if (p == 7) continue;
    for (Complex s : {Complex(1.5, 0.0), Complex(2.0, 0.0), Complex(2.0, 1.0)}) {
      ASSERT_LE(factorization_residual(bc, p, s), 1e-10) << p;
    }
  }
}

TEST(LogDerivative, ZetaAtTwo) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  const Complex v = truncated_log_derivative(one, one, 2.0, 1000000);
  // Tail beyond 10^6 is about 1/N.
  EXPECT_NEAR(v.real(), kZetaLogDerivAt2, 2e-6);
  EXPECT_EQ(v.imag(), 0.0);
  EXPECT_TRUE(near(truncated_log_derivative(one, one, 2.0, 2), std::log(2.0) / 4.0, 1e-16));
}

TEST(LogDerivative, DiagonalOnRealAxisIsReal) {
  const BaseChangedRep pi{gl1(7, 3), kCubic7};
  EXPECT_EQ(truncated_log_derivative(pi, pi, 1.5, 20000).imag(), 0.0);
}

TEST(LogDerivative, DirichletAndEulerRoutesAgree) {
  const std::vector<std::pair<BaseChangedRep, BaseChangedRep>> pairs = {
      {{AutomorphicRep::trivial(), kQ}, {AutomorphicRep::trivial(), kQ}},
      {{gl1(5, 2), kQ}, {gl1(5, 2), kQ}},
      {{AutomorphicRep::trivial(), kQuadratic5}, {AutomorphicRep::trivial(), kQuadratic5}},
      {{gl1(7, 3), kQ}, {gl1(13, 4), kQ}},
  };
  for (const auto& [pi, pi_prime] : pairs) {
    const Complex dirichlet = truncated_log_derivative(pi, pi_prime, 2.0, 10000);
    const Complex euler = euler_log_derivative(pi, pi_prime, 2.0, 10000);
    EXPECT_LE(std::abs(dirichlet - euler), 1e-6) << pi.descent.describe();
  }
}

TEST(LogDerivative, Guards) {
  const BaseChangedRep one{AutomorphicRep::trivial(), kQ};
  EXPECT_THROW(truncated_log_derivative(one, one, 1.05, 100), ConvergenceDomainError);
  EXPECT_THROW(truncated_log_derivative(one, one, 2.0, 1), DomainError);
}

TEST(Streams, OrderedNonzeroAndThreadIndependent) {
  const auto pair = RankinPair::same_field({delta(), kQuadratic5}, {delta(), kQuadratic5});
  const auto a = generate_stream(pair, 50000, 1);
  const auto b = generate_stream(pair, 50000, 4);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    ASSERT_EQ(a.entries[i].n, b.entries[i].n);
    ASSERT_EQ(a.entries[i].value, b.entries[i].value);
    ASSERT_NE(a.entries[i].value, Complex(0.0, 0.0));
    if (i > 0) {
      ASSERT_LT(a.entries[i - 1].n, a.entries[i].n);
    }
    ASSERT_EQ(a.entries[i].value, pair.coefficient(a.entries[i].p, a.entries[i].k));
  }
  EXPECT_THROW(generate_stream(pair, 200000), CapacityError);
}

TEST(Streams, AcrossFieldsUsesBaseChangeProduct) {
  const BaseChangedRep pi{AutomorphicRep::trivial(), kQuadratic5};
  const BaseChangedRep pi_prime{AutomorphicRep::trivial(), kCubic7};
  const auto pair = RankinPair::across_fields(pi, pi_prime);
  EXPECT_TRUE(pair.coprime_degrees());
  EXPECT_TRUE(pair.ramified_at(5));
  EXPECT_TRUE(pair.ramified_at(7));
  for (u64 p : {2ULL, 3ULL, 11ULL, 29ULL}) {
    for (u64 k = 1; k <= 3; ++k) {
      EXPECT_EQ(pair.coefficient(p, k), rs_bc_coefficient(pi, pi_prime, p, k));
    }
  }
  // 29 splits in both fields, so every one of the 6 terms is 1.
  EXPECT_TRUE(near(pair.coefficient(29, 1), 6.0, 1e-12));
}

}  // namespace
