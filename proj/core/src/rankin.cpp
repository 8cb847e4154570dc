#include "rslab/rankin.hpp"

#include <algorithm>
#include <cmath>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

constexpr double kPoleGuard = 1e-14;
constexpr std::size_t kPrimesPerBlock = 1024;

void require_same_field(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, const char* who) {
  if (!(pi.field == pi_prime.field)) {
    throw DomainError(std::string(who) + ": representations live over different fields (" +
                      pi.field.describe() + " vs " + pi_prime.field.describe() + ")");
  }
}

void require_convergent(Complex s, bool inside, const char* who) {
  if (!inside) {
    throw ConvergenceDomainError(std::string(who) + ": Re s = " + std::to_string(s.real()) +
                                 " outside the convergence domain");
  }
}

Complex inverse_local(Complex z) {
  const Complex one_minus = Complex{1.0, 0.0} - z;
  if (std::abs(one_minus) < kPoleGuard) {
    throw NumericalSingularityError("local factor evaluated next to a pole (|1-z| < 1e-14)");
  }
  return Complex{1.0, 0.0} / one_minus;
}

Complex prime_power_s(u64 p, double f, Complex s) {
  return std::exp(-f * s * std::log(static_cast<double>(p)));
}

Complex bc_coefficient_from_families(const std::vector<AutomorphicRep>& family,
                                     const std::vector<AutomorphicRep>& family_prime, u64 p, u64 k) {
  std::vector<Complex> a;
  std::vector<Complex> b;
  a.reserve(family.size());
  b.reserve(family_prime.size());
  for (const auto& rep : family) a.push_back(standard_coefficient(rep, p, k));
  for (const auto& rep : family_prime) b.push_back(std::conj(standard_coefficient(rep, p, k)));
  Complex total{0.0, 0.0};
  for (const auto& ai : a) {
    for (const auto& bj : b) total += ai * bj;
  }
  return total;
}

}  // namespace

Complex power_sum(std::span<const Complex> parameters, u64 k) noexcept {
  Complex total{0.0, 0.0};
  for (const auto& a : parameters) total += ipow(a, k);
  return total;
}

Complex standard_coefficient(const AutomorphicRep& rep, u64 p, u64 k) {
  return power_sum(rep.satake_at(p), k);
}

Complex standard_coefficient(const AutomorphicRep& rep, u64 n) {
  const auto pk = as_prime_power(n);
  if (!pk) return {0.0, 0.0};
  return standard_coefficient(rep, pk.prime, static_cast<u64>(pk.exponent));
}

Complex rs_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, u64 k) {
  require_same_field(pi, pi_prime, "rs_coefficient");
  if (k == 0 || pi.field.is_ramified(p)) return {0.0, 0.0};
  const auto split = splitting_data(pi.field, p);
  if (k % split.f != 0) return {0.0, 0.0};
  const u64 kk = k / split.f;
  const auto places = base_change_satake(pi, p);
  const auto places_prime = base_change_satake(pi_prime, p);
  Complex total{0.0, 0.0};
  for (std::size_t v = 0; v < places.size(); ++v) {
    // Product first so that the diagonal pi = pi' is exactly real.
    total += static_cast<double>(split.f) *
             (power_sum(places[v], kk) * std::conj(power_sum(places_prime[v], kk)));
  }
  return total;
}

Complex rs_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 n) {
  require_same_field(pi, pi_prime, "rs_coefficient");
  const auto pk = as_prime_power(n);
  if (!pk) return {0.0, 0.0};
  return rs_coefficient(pi, pi_prime, pk.prime, static_cast<u64>(pk.exponent));
}

Complex rs_bc_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, u64 k) {
  if (k == 0 || pi.field.is_ramified(p) || pi_prime.field.is_ramified(p)) return {0.0, 0.0};
  return bc_coefficient_from_families(twist_family(pi), twist_family(pi_prime), p, k);
}

Complex rs_bc_coefficient(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 n) {
  const auto pk = as_prime_power(n);
  if (!pk) return {0.0, 0.0};
  return rs_bc_coefficient(pi, pi_prime, pk.prime, static_cast<u64>(pk.exponent));
}

Complex place_power_sum(const BaseChangedRep& bc, u64 p, u64 k) {
  const auto split = splitting_data(bc.field, p);
  Complex total{0.0, 0.0};
  for (const auto& place : base_change_satake(bc, p)) {
    total += static_cast<double>(split.f) * power_sum(place, k);
  }
  return total;
}

Complex twist_power_sum(const BaseChangedRep& bc, u64 p, u64 k) {
  if (bc.field.is_ramified(p)) {
    throw RamifiedPlaceError("twist_power_sum: p=" + std::to_string(p) + " ramifies in " +
                             bc.field.describe());
  }
  const auto split = splitting_data(bc.field, p);
  Complex total{0.0, 0.0};
  for (const auto& rep : twist_family(bc)) total += power_sum(rep.satake_at(p), split.f * k);
  return total;
}

Complex euler_factor(const BaseChangedRep& pi, const BaseChangedRep& pi_prime, u64 p, Complex s) {
  require_same_field(pi, pi_prime, "euler_factor");
  require_convergent(s, s.real() > 1.0, "euler_factor");
  const auto split = splitting_data(pi.field, p);
  const auto places = base_change_satake(pi, p);
  const auto places_prime = base_change_satake(pi_prime, p);
  const Complex scale = prime_power_s(p, static_cast<double>(split.f), s);
  Complex product{1.0, 0.0};
  for (std::size_t v = 0; v < places.size(); ++v) {
    for (const auto& a : places[v]) {
      for (const auto& b : places_prime[v]) product *= inverse_local(a * std::conj(b) * scale);
    }
  }
  return ensure_finite(product, "euler_factor");
}

Complex standard_local_factor(const AutomorphicRep& rep, u64 p, Complex s) {
  require_convergent(s, s.real() > 1.0, "standard_local_factor");
  const Complex scale = prime_power_s(p, 1.0, s);
  Complex product{1.0, 0.0};
  for (const auto& a : rep.satake_at(p)) product *= inverse_local(a * scale);
  return product;
}

Complex base_change_local_factor(const BaseChangedRep& bc, u64 p, Complex s) {
  require_convergent(s, s.real() > 1.0, "base_change_local_factor");
  const auto split = splitting_data(bc.field, p);
  const Complex scale = prime_power_s(p, static_cast<double>(split.f), s);
  Complex product{1.0, 0.0};
  for (const auto& place : base_change_satake(bc, p)) {
    for (const auto& a : place) product *= inverse_local(a * scale);
  }
  return product;
}

double factorization_residual(const BaseChangedRep& bc, u64 p, Complex s) {
  const Complex over_field = base_change_local_factor(bc, p, s);
  Complex over_q{1.0, 0.0};
  for (const auto& rep : twist_family(bc)) over_q *= standard_local_factor(rep, p, s);
  return std::abs(over_field - over_q);
}

Complex truncated_log_derivative(const BaseChangedRep& pi, const BaseChangedRep& pi_prime,
                                 Complex s, u64 N) {
  require_same_field(pi, pi_prime, "truncated_log_derivative");
  require_convergent(s, s.real() >= 1.1, "truncated_log_derivative");
  if (N < 2) throw DomainError("truncated_log_derivative: N must be >= 2");
  const auto primes = sieve_primes(N);
  CompensatedComplexSum sum;
  for (const std::uint32_t p : primes.primes()) {
    const double log_p = std::log(static_cast<double>(p));
    u64 n = p;
    for (u64 k = 1;; ++k) {
      const Complex a = rs_coefficient(pi, pi_prime, p, k);
      if (a != Complex{0.0, 0.0}) sum.add(log_p * a * std::exp(-s * (static_cast<double>(k) * log_p)));
      if (n > N / p) break;
      n *= p;
    }
  }
  return ensure_finite(sum.value(), "truncated_log_derivative");
}

Complex euler_log_derivative(const BaseChangedRep& pi, const BaseChangedRep& pi_prime,
                             Complex s, u64 N) {
  require_same_field(pi, pi_prime, "euler_log_derivative");
  require_convergent(s, s.real() > 1.0, "euler_log_derivative");
  if (N < 2) throw DomainError("euler_log_derivative: N must be >= 2");
  const auto primes = sieve_primes(N);
  CompensatedComplexSum sum;
  for (const std::uint32_t p : primes.primes()) {
    if (pi.field.is_ramified(p)) continue;
    const auto split = splitting_data(pi.field, p);
    const double f = static_cast<double>(split.f);
    const double log_p = std::log(static_cast<double>(p));
    const Complex scale = prime_power_s(p, f, s);
    const auto places = base_change_satake(pi, p);
    const auto places_prime = base_change_satake(pi_prime, p);
    for (std::size_t v = 0; v < places.size(); ++v) {
      for (const auto& a : places[v]) {
        for (const auto& b : places_prime[v]) {
          const Complex z = a * std::conj(b) * scale;
          sum.add(f * log_p * z * inverse_local(z));
        }
      }
    }
  }
  return ensure_finite(sum.value(), "euler_log_derivative");
}

RankinPair::RankinPair(Mode mode, BaseChangedRep pi, BaseChangedRep pi_prime)
    : mode_(mode), pi_(std::move(pi)), pi_prime_(std::move(pi_prime)) {
  if (mode_ == Mode::across_fields) {
    family_ = twist_family(pi_);
    family_prime_ = twist_family(pi_prime_);
  }
}

RankinPair RankinPair::same_field(BaseChangedRep pi, BaseChangedRep pi_prime) {
  require_same_field(pi, pi_prime, "RankinPair::same_field");
  return RankinPair(Mode::same_field, std::move(pi), std::move(pi_prime));
}

RankinPair RankinPair::across_fields(BaseChangedRep pi, BaseChangedRep pi_prime) {
  return RankinPair(Mode::across_fields, std::move(pi), std::move(pi_prime));
}

Complex RankinPair::coefficient(u64 p, u64 k) const {
  if (mode_ == Mode::same_field) return rs_coefficient(pi_, pi_prime_, p, k);
  if (k == 0 || ramified_at(p)) return {0.0, 0.0};
  return bc_coefficient_from_families(family_, family_prime_, p, k);
}

u64 RankinPair::exponent_step(u64 p) const {
  if (mode_ == Mode::across_fields || pi_.field.is_ramified(p)) return 1;
  return splitting_data(pi_.field, p).f;
}

bool RankinPair::ramified_at(u64 p) const noexcept {
  return pi_.field.is_ramified(p) || pi_prime_.field.is_ramified(p);
}

u64 RankinPair::table_limit() const noexcept {
  return std::min(pi_.descent.table_limit(), pi_prime_.descent.table_limit());
}

bool RankinPair::coprime_degrees() const noexcept {
  return gcd(pi_.field.degree(), pi_prime_.field.degree()) == 1;
}

std::string RankinPair::describe() const {
  const std::string op = mode_ == Mode::same_field ? " x " : " x_BC ";
  return "(" + pi_.descent.describe() + " over " + pi_.field.describe() + ")" + op + "(" +
         pi_prime_.descent.describe() + " over " + pi_prime_.field.describe() + ")~";
}

CoefficientStream generate_stream(const RankinPair& pair, u64 limit, int threads) {
  if (limit == 0) throw DomainError("generate_stream: limit must be >= 1");
  if (limit > pair.table_limit()) {
    throw CapacityError("generate_stream: limit " + std::to_string(limit) +
                        " exceeds the representation tables (" + std::to_string(pair.table_limit()) + ")");
  }
  CoefficientStream stream;
  stream.limit = limit;
  if (limit < 2) return stream;
  const auto primes = sieve_primes(limit);
  const std::size_t blocks = (primes.size() + kPrimesPerBlock - 1) / kPrimesPerBlock;
  std::vector<std::vector<StreamEntry>> partial(blocks);
  parallel_chunks(blocks, threads, [&](std::size_t block) {
    const std::size_t begin = block * kPrimesPerBlock;
    const std::size_t end = std::min(primes.size(), begin + kPrimesPerBlock);
    auto& out = partial[block];
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      const u64 step = pair.exponent_step(p);
      u64 n = 1;
      bool fits = true;
      for (u64 j = 0; j < step; ++j) {
        if (n > limit / p) {
          fits = false;
          break;
        }
        n *= p;
      }
      if (!fits) continue;
      const u64 base = n;
      for (u64 k = step;; k += step) {
        const Complex a = pair.coefficient(p, k);
        if (a != Complex{0.0, 0.0}) {
          out.push_back({n, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k), a});
        }
        if (n > limit / base) break;
        n *= base;
      }
    }
  });
  std::size_t total = 0;
  for (const auto& block : partial) total += block.size();
  stream.entries.reserve(total);
  for (auto& block : partial) {
    stream.entries.insert(stream.entries.end(), block.begin(), block.end());
  }
  std::sort(stream.entries.begin(), stream.entries.end(),
            [](const StreamEntry& a, const StreamEntry& b) { return a.n < b.n; });
  return stream;
}

}  // namespace rslab
