#include "rslab/tau.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include "rslab/errors.hpp"

namespace rslab {

namespace {

__extension__ typedef unsigned __int128 U128;

constexpr u64 kModulusA = (1ULL << 61) - 1;
constexpr u64 kModulusB = (1ULL << 62) - 57;

// Coefficients F_0..F_{count-1} of prod (1-q^n)^24 modulo `modulus`.
std::vector<u64> eta24_mod(std::size_t count, u64 modulus) {
  std::vector<u64> f(count, 0);
  if (count == 0) return f;
  f[0] = 1;

  std::vector<u64> inverse(count + 1, 1);
  for (u64 i = 2; i < inverse.size(); ++i) {
    inverse[i] = mul_mod(modulus - modulus / i, inverse[modulus % i], modulus);
  }

  for (std::size_t m = 1; m < count; ++m) {
    U128 pos = 0;
    U128 neg = 0;
    for (u64 j = 1;; ++j) {
      const u64 k = j * (j + 1) / 2;
      if (k > m) break;
      const i64 jacobi = (j & 1U) ? -static_cast<i64>(2 * j + 1) : static_cast<i64>(2 * j + 1);
      const i64 c = (9 * static_cast<i64>(k) - static_cast<i64>(m)) * jacobi;
      const U128 term = static_cast<U128>(c < 0 ? -c : c) * f[m - k];
      if (c < 0) {
        neg += term;
      } else {
        pos += term;
      }
    }
    const u64 p = static_cast<u64>(pos % modulus);
    const u64 n = static_cast<u64>(neg % modulus);
    const u64 diff = p >= n ? p - n : p + (modulus - n);
    f[m] = mul_mod(diff, inverse[m], modulus);
  }
  return f;
}

Int128 crt_signed(u64 a, u64 b) {
  static const u64 inv_a_mod_b = pow_mod(kModulusA % kModulusB, kModulusB - 2, kModulusB);
  const u64 a_mod_b = a % kModulusB;
  const u64 diff = b >= a_mod_b ? b - a_mod_b : b + (kModulusB - a_mod_b);
  const u64 t = mul_mod(diff, inv_a_mod_b, kModulusB);
  const U128 modulus = static_cast<U128>(kModulusA) * kModulusB;
  const U128 x = static_cast<U128>(a) + static_cast<U128>(kModulusA) * t;
  if (x > modulus / 2) return -static_cast<Int128>(modulus - x);
  return static_cast<Int128>(x);
}

long double to_long_double(Int128 v) {
  const bool negative = v < 0;
  U128 u = negative ? static_cast<U128>(-v) : static_cast<U128>(v);
  const long double hi = static_cast<long double>(static_cast<u64>(u >> 64));
  const long double lo = static_cast<long double>(static_cast<u64>(u));
  const long double r = hi * 18446744073709551616.0L + lo;
  return negative ? -r : r;
}

}  // namespace

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  U128 u = negative ? static_cast<U128>(-v) : static_cast<U128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 parse_int128(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw DomainError("parse_int128: empty integer");
  U128 u = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw DomainError("parse_int128: bad digit in '" + std::string(text) + "'");
    u = u * 10 + static_cast<unsigned>(c - '0');
  }
  return negative ? -static_cast<Int128>(u) : static_cast<Int128>(u);
}

std::vector<Int128> ramanujan_tau_series(u64 limit) {
  if (limit > kMaxTauLimit) {
    throw CapacityError("ramanujan_tau_series: limit " + std::to_string(limit) + " exceeds " +
                        std::to_string(kMaxTauLimit));
  }
  std::vector<Int128> tau(limit + 1, 0);
  if (limit == 0) return tau;
  std::vector<u64> fa;
  std::vector<u64> fb;
  {
    std::jthread worker([&] { fb = eta24_mod(limit, kModulusB); });
    fa = eta24_mod(limit, kModulusA);
  }
  for (u64 n = 1; n <= limit; ++n) tau[n] = crt_signed(fa[n - 1], fb[n - 1]);
  return tau;
}

CuspFormTable::CuspFormTable(int weight, u64 limit, std::vector<std::uint32_t> primes,
                             std::vector<Int128> eigenvalues)
    : weight_(weight), limit_(limit), primes_(std::move(primes)), eigenvalues_(std::move(eigenvalues)) {
  if (weight <= 0 || weight % 2 != 0) {
    throw DomainError("CuspFormTable: weight must be a positive even integer");
  }
  if (primes_.size() != eigenvalues_.size()) {
    throw DomainError("CuspFormTable: primes and eigenvalues differ in length");
  }
  if (!std::is_sorted(primes_.begin(), primes_.end())) {
    throw DomainError("CuspFormTable: primes must be ascending");
  }
  normalized_.reserve(primes_.size());
  const long double half = (static_cast<long double>(weight) - 1.0L) / 2.0L;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const long double lambda =
        to_long_double(eigenvalues_[i]) / std::pow(static_cast<long double>(primes_[i]), half);
    if (std::fabs(lambda) > 2.0L + 1e-12L) {
      throw ContractViolation("CuspFormTable: Deligne bound violated at p=" +
                              std::to_string(primes_[i]) + " (a(p)=" + to_string(eigenvalues_[i]) + ")");
    }
    normalized_.push_back(static_cast<double>(lambda));
  }
}

std::size_t CuspFormTable::slot(u64 p) const {
  if (p > limit_) {
    throw CapacityError("CuspFormTable: p=" + std::to_string(p) + " beyond table limit " +
                        std::to_string(limit_));
  }
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(p));
  if (it == primes_.end() || *it != p) {
    throw DomainError("CuspFormTable: " + std::to_string(p) + " is not a tabulated prime");
  }
  return static_cast<std::size_t>(it - primes_.begin());
}

Int128 CuspFormTable::eigenvalue(u64 p) const { return eigenvalues_[slot(p)]; }

double CuspFormTable::normalized(u64 p) const { return normalized_[slot(p)]; }

CuspFormTable ramanujan_tau_table(u64 limit) {
  const auto tau = ramanujan_tau_series(limit);
  std::vector<std::uint32_t> primes;
  std::vector<Int128> values;
  if (limit >= 2) {
    const auto table = sieve_primes(limit);
    primes.assign(table.primes().begin(), table.primes().end());
    values.reserve(primes.size());
    for (auto p : primes) values.push_back(tau[p]);
  }
  return CuspFormTable(12, limit, std::move(primes), std::move(values));
}

void write_cusp_table(std::ostream& out, const CuspFormTable& table) {
  out << table.weight() << ',' << table.limit() << '\n';
  for (auto p : table.primes()) out << p << ',' << to_string(table.eigenvalue(p)) << '\n';
}

CuspFormTable read_cusp_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_cusp_table: empty input");
  const auto comma = line.find(',');
  if (comma == std::string::npos) throw DomainError("read_cusp_table: bad header");
  const int weight = std::stoi(line.substr(0, comma));
  const u64 limit = std::stoull(line.substr(comma + 1));
  std::vector<std::uint32_t> primes;
  std::vector<Int128> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = line.find(',');
    if (c == std::string::npos) throw DomainError("read_cusp_table: bad row '" + line + "'");
    primes.push_back(static_cast<std::uint32_t>(std::stoul(line.substr(0, c))));
    values.push_back(parse_int128(std::string_view(line).substr(c + 1)));
  }
  return CuspFormTable(weight, limit, std::move(primes), std::move(values));
}

}  // namespace rslab
