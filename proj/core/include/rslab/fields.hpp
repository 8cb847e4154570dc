// fields.hpp
//
// Cyclic extensions E/Q presented by a Dirichlet character eta of prime
// conductor: E is the fixed field of ker(eta), of degree ell = order(eta).
// No polynomial or ideal arithmetic is done; splitting is read off eta.

#pragma once

#include <optional>
#include <string>

#include "rslab/characters.hpp"

namespace rslab {

class CyclicExtension {
 public:
  // The trivial extension Q/Q (degree 1, nothing ramified).
  static CyclicExtension rationals() { return CyclicExtension(); }
  // Field cut out by eta; degree = order(eta). A principal eta gives Q.
  static CyclicExtension from_character(const DirichletCharacter& eta);
  // Canonical field of the given degree and prime conductor.
  static CyclicExtension make(u64 conductor, u64 degree);

  u64 degree() const noexcept { return character_ ? character_->order() : 1; }
  const std::optional<DirichletCharacter>& character() const noexcept { return character_; }
  u64 conductor() const noexcept { return character_ ? character_->conductor() : 1; }
  bool is_rationals() const noexcept { return !character_; }
  bool is_ramified(u64 p) const noexcept { return character_ && p == character_->conductor(); }

  // eta^power as a twist factor (trivial when power == 0 mod degree).
  CharacterProduct twist_character(i64 power) const;

  std::string describe() const;

  friend bool operator==(const CyclicExtension& a, const CyclicExtension& b) noexcept {
    return a.character_ == b.character_;
  }

 private:
  CyclicExtension() = default;
  std::optional<DirichletCharacter> character_;
};

struct SplittingData {
  u64 p = 0;
  u64 e = 1;  // ramification index
  u64 f = 1;  // modular (residue) degree
  u64 g = 1;  // number of places above p

  u64 local_degree() const noexcept { return e * f; }
  // Residue field cardinality q_v = p^f.
  double residue_cardinality() const;
};

// Throws UnsupportedCaseError for p | conductor when the degree is composite.
SplittingData splitting_data(const CyclicExtension& field, u64 p);

bool splits_completely(const CyclicExtension& field, u64 p);

// p splits completely in EF iff it does in E and in F (both abelian).
bool splits_completely_in_compositum(const CyclicExtension& e, const CyclicExtension& f, u64 p);

}  // namespace rslab
