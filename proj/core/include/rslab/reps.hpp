// reps.hpp
//
// Automorphic representations of GL_m over Q given by computable Satake
// parameters, their twists by characters and |det|^{i tau}, and base change
// to a cyclic field.
//
// Conventions:
//  - Twist characters act as primitive characters; a principal factor is the
//    trivial character and is dropped.
//  - At a prime where a twist character is ramified every parameter is zero
//    (the "some parameters may vanish" convention, applied to all of them).
//  - Base change is defined on parameters: at an unramified p with residue
//    degree f, each of the g places above p carries {alpha_j^f}.

#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rslab/characters.hpp"
#include "rslab/fields.hpp"
#include "rslab/tau.hpp"

namespace rslab {

using SatakeSet = std::vector<Complex>;

// Explicit per-prime parameters for a rank-m representation, p <= limit.
class SatakeTable {
 public:
  SatakeTable(int rank, std::vector<std::uint32_t> primes, std::vector<Complex> parameters);

  int rank() const noexcept { return rank_; }
  u64 limit() const noexcept { return primes_.empty() ? 0 : primes_.back(); }
  std::span<const Complex> at(u64 p) const;

 private:
  int rank_;
  std::vector<std::uint32_t> primes_;
  std::vector<Complex> parameters_;
};

// CSV rows `p,re_1,im_1,...,re_m,im_m`; an optional header starting with
// 'p' is skipped. Every prime up to the last row must be present.
SatakeTable read_satake_csv(std::istream& in);

enum class RepKind { character, cusp_form, explicit_table };

class AutomorphicRep {
 public:
  static AutomorphicRep trivial();
  static AutomorphicRep from_character(const DirichletCharacter& chi);
  static AutomorphicRep from_cusp_form(std::shared_ptr<const CuspFormTable> form);
  static AutomorphicRep from_table(std::shared_ptr<const SatakeTable> table);

  int rank() const noexcept { return rank_; }
  RepKind kind() const noexcept { return kind_; }
  const CharacterProduct& twist_character() const noexcept { return twist_; }
  double shift() const noexcept { return shift_; }

  // p divides the conductor of some twist factor.
  bool is_ramified_at(u64 p) const noexcept { return twist_.ramified_at(p); }
  // Largest p for which satake_at() is defined.
  u64 table_limit() const noexcept;

  // Multiset of rank() parameters at the prime p.
  SatakeSet satake_at(u64 p) const;

  std::string describe() const;

  friend AutomorphicRep twist(const AutomorphicRep& rep, const CharacterProduct& chi, double tau);

 private:
  AutomorphicRep() = default;

  RepKind kind_ = RepKind::character;
  int rank_ = 1;
  std::shared_ptr<const CuspFormTable> form_;
  std::shared_ptr<const SatakeTable> table_;
  CharacterProduct twist_;
  double shift_ = 0.0;
};

// rep (x) chi (x) |det|^{i tau}: parameters multiply by chi(p) p^{-i tau}.
AutomorphicRep twist(const AutomorphicRep& rep, const CharacterProduct& chi, double tau);
inline AutomorphicRep twist(const AutomorphicRep& rep, const DirichletCharacter& chi, double tau) {
  return twist(rep, CharacterProduct(chi), tau);
}

inline SatakeSet satake_at(const AutomorphicRep& rep, u64 p) { return rep.satake_at(p); }

// A Galois-invariant representation over a cyclic field, held as its
// descent to Q together with the field.
struct BaseChangedRep {
  AutomorphicRep descent;
  CyclicExtension field;
};

// The descent family rep (x) eta^a for a = 0..degree-1.
std::vector<AutomorphicRep> twist_family(const BaseChangedRep& bc);

// One parameter multiset per place above p (g_p of them, all equal).
// RamifiedPlaceError when p ramifies in the field.
std::vector<SatakeSet> base_change_satake(const BaseChangedRep& bc, u64 p);

}  // namespace rslab
