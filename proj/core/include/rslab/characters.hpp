// characters.hpp
//
// Dirichlet characters of prime conductor q. A character is labelled by an
// index a in [0, q-2] via chi(g) = e^{2 pi i a/(q-1)}, g the least primitive
// root mod q, so labels are reproducible across runs. Any character of a
// given order generates the same kernel, hence the same cyclic field; the
// canonical choice made by make_character() is a = (q-1)/order.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rslab/arithmetic.hpp"

namespace rslab {

// Largest conductor for which value tables are built.
inline constexpr u64 kMaxConductor = 10'000'000ULL;

class DirichletCharacter {
 public:
  // Index 0 (principal) character mod `conductor`.
  static DirichletCharacter principal(u64 conductor);
  static DirichletCharacter from_index(u64 conductor, i64 index);

  u64 conductor() const noexcept { return conductor_; }
  u64 index() const noexcept { return index_; }
  u64 order() const noexcept { return order_; }
  u64 primitive_root() const noexcept;
  bool is_principal() const noexcept { return index_ == 0; }

  // chi(n); zero iff conductor | n.
  Complex operator()(i64 n) const noexcept { return values_->at(reduce(n)); }

  // For gcd(n, q) = 1, chi(n) = e^{2 pi i e/(q-1)}; returns e. nullopt if q | n.
  std::optional<u64> exponent(i64 n) const noexcept;

  // Multiplicative order of chi(n) as a root of unity; 0 if q | n.
  u64 value_order(i64 n) const noexcept;

  // chi^power; indices add mod q-1.
  DirichletCharacter pow(i64 power) const;
  DirichletCharacter conjugate() const { return pow(-1); }

  std::string describe() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) noexcept {
    return a.conductor_ == b.conductor_ && a.index_ == b.index_;
  }

 private:
  struct Tables;
  static std::shared_ptr<const Tables> tables_for(u64 conductor);
  DirichletCharacter(std::shared_ptr<const Tables> tables, u64 index);
  std::size_t reduce(i64 n) const noexcept;

  std::shared_ptr<const Tables> tables_;
  std::shared_ptr<const std::vector<Complex>> values_;
  u64 conductor_ = 0;
  u64 index_ = 0;
  u64 order_ = 1;
};

// Character of exactly `target_order` (which must divide conductor - 1).
DirichletCharacter make_character(u64 conductor, u64 target_order);

inline Complex evaluate(const DirichletCharacter& chi, i64 n) { return chi(n); }
inline DirichletCharacter compose(const DirichletCharacter& chi, i64 power) { return chi.pow(power); }
inline DirichletCharacter conjugate(const DirichletCharacter& chi) { return chi.conjugate(); }

// A finite product of primitive characters of distinct prime conductors,
// used as the character part of a twist. Principal factors are dropped: as
// a twist, chi * conj(chi) is the trivial character, which is 1 at every
// prime including the conductor.
class CharacterProduct {
 public:
  CharacterProduct() = default;
  explicit CharacterProduct(const DirichletCharacter& chi);

  bool is_trivial() const noexcept { return factors_.empty(); }
  const std::vector<DirichletCharacter>& factors() const noexcept { return factors_; }

  Complex operator()(i64 n) const noexcept;
  bool ramified_at(u64 p) const noexcept;

  CharacterProduct operator*(const CharacterProduct& other) const;
  CharacterProduct conjugate() const;

  std::string describe() const;

  friend bool operator==(const CharacterProduct& a, const CharacterProduct& b) noexcept {
    return a.factors_ == b.factors_;
  }

 private:
  void multiply_in(const DirichletCharacter& chi);
  std::vector<DirichletCharacter> factors_;
};

}  // namespace rslab
