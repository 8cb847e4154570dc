#include "rslab/characters.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "rslab/errors.hpp"

namespace rslab {

struct DirichletCharacter::Tables {
  u64 conductor = 0;
  u64 root = 1;
  // dlog[n] = discrete log of n to base `root`, for 1 <= n < conductor.
  std::vector<std::uint32_t> dlog;
};

DirichletCharacter::DirichletCharacter(std::shared_ptr<const Tables> tables, u64 index)
    : tables_(std::move(tables)), conductor_(tables_->conductor) {
  const u64 group = conductor_ - 1;
  index_ = group == 0 ? 0 : index % group;
  order_ = group == 0 ? 1 : group / gcd(index_, group);
  auto values = std::make_shared<std::vector<Complex>>(conductor_, Complex{0.0, 0.0});
  for (u64 n = 1; n < conductor_; ++n) {
    const u64 e = (index_ * tables_->dlog[n]) % group;
    (*values)[n] = unit_root(static_cast<i64>(e), static_cast<i64>(group));
  }
  values_ = std::move(values);
}

std::shared_ptr<const DirichletCharacter::Tables> DirichletCharacter::tables_for(u64 q) {
  static std::mutex mutex;
  static std::map<u64, std::weak_ptr<const DirichletCharacter::Tables>> cache;
  std::lock_guard lock(mutex);
  if (auto hit = cache[q].lock()) return hit;

  auto t = std::make_shared<DirichletCharacter::Tables>();
  t->conductor = q;
  t->root = least_primitive_root(q);
  t->dlog.assign(q, 0);
  u64 power = 1;
  for (u64 e = 0; e + 1 < q; ++e) {
    t->dlog[power] = static_cast<std::uint32_t>(e);
    power = power * t->root % q;
  }
  cache[q] = t;
  return t;
}

namespace {

void check_conductor(u64 conductor) {
  if (!is_prime(conductor)) {
    throw DomainError("Dirichlet character: conductor " + std::to_string(conductor) +
                      " is not prime");
  }
  if (conductor > kMaxConductor) {
    throw CapacityError("Dirichlet character: conductor " + std::to_string(conductor) +
                        " exceeds " + std::to_string(kMaxConductor));
  }
}

}  // namespace

DirichletCharacter DirichletCharacter::principal(u64 conductor) {
  return from_index(conductor, 0);
}

DirichletCharacter DirichletCharacter::from_index(u64 conductor, i64 index) {
  check_conductor(conductor);
  const i64 group = static_cast<i64>(conductor) - 1;
  const i64 reduced = group == 0 ? 0 : ((index % group) + group) % group;
  return DirichletCharacter(tables_for(conductor), static_cast<u64>(reduced));
}

u64 DirichletCharacter::primitive_root() const noexcept { return tables_->root; }

std::size_t DirichletCharacter::reduce(i64 n) const noexcept {
  const i64 q = static_cast<i64>(conductor_);
  return static_cast<std::size_t>(((n % q) + q) % q);
}

std::optional<u64> DirichletCharacter::exponent(i64 n) const noexcept {
  const std::size_t r = reduce(n);
  if (r == 0) return std::nullopt;
  const u64 group = conductor_ - 1;
  return (index_ * tables_->dlog[r]) % group;
}

u64 DirichletCharacter::value_order(i64 n) const noexcept {
  const auto e = exponent(n);
  if (!e) return 0;
  const u64 group = conductor_ - 1;
  return group / gcd(*e, group);
}

DirichletCharacter DirichletCharacter::pow(i64 power) const {
  const i64 group = static_cast<i64>(conductor_) - 1;
  const i64 p = ((power % group) + group) % group;
  return DirichletCharacter(tables_, mul_mod(index_, static_cast<u64>(p), static_cast<u64>(group)));
}

std::string DirichletCharacter::describe() const {
  std::ostringstream os;
  os << "chi[q=" << conductor_ << ",index=" << index_ << ",order=" << order_ << "]";
  return os.str();
}

DirichletCharacter make_character(u64 conductor, u64 target_order) {
  check_conductor(conductor);
  if (target_order == 0 || (conductor - 1) % target_order != 0) {
    throw DomainError("make_character: order " + std::to_string(target_order) +
                      " does not divide conductor-1 = " + std::to_string(conductor - 1));
  }
  return DirichletCharacter::from_index(conductor, static_cast<i64>((conductor - 1) / target_order));
}

CharacterProduct::CharacterProduct(const DirichletCharacter& chi) { multiply_in(chi); }

void CharacterProduct::multiply_in(const DirichletCharacter& chi) {
  for (auto it = factors_.begin(); it != factors_.end(); ++it) {
    if (it->conductor() == chi.conductor()) {
      auto merged = DirichletCharacter::from_index(
          chi.conductor(), static_cast<i64>(it->index() + chi.index()));
      if (merged.is_principal()) {
        factors_.erase(it);
      } else {
        *it = merged;
      }
      return;
    }
    if (it->conductor() > chi.conductor()) {
      if (!chi.is_principal()) factors_.insert(it, chi);
      return;
    }
  }
  if (!chi.is_principal()) factors_.push_back(chi);
}

Complex CharacterProduct::operator()(i64 n) const noexcept {
  Complex v{1.0, 0.0};
  for (const auto& chi : factors_) v *= chi(n);
  return v;
}

bool CharacterProduct::ramified_at(u64 p) const noexcept {
  for (const auto& chi : factors_) {
    if (chi.conductor() == p) return true;
  }
  return false;
}

CharacterProduct CharacterProduct::operator*(const CharacterProduct& other) const {
  CharacterProduct out = *this;
  for (const auto& chi : other.factors_) out.multiply_in(chi);
  return out;
}

CharacterProduct CharacterProduct::conjugate() const {
  CharacterProduct out;
  for (const auto& chi : factors_) out.factors_.push_back(chi.conjugate());
  return out;
}

std::string CharacterProduct::describe() const {
  if (factors_.empty()) return "trivial";
  std::string s;
  for (const auto& chi : factors_) {
    if (!s.empty()) s += "*";
    s += chi.describe();
  }
  return s;
}

}  // namespace rslab
