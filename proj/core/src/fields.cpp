#include "rslab/fields.hpp"

#include <cmath>

#include "rslab/errors.hpp"

namespace rslab {

CyclicExtension CyclicExtension::from_character(const DirichletCharacter& eta) {
  CyclicExtension field;
  if (!eta.is_principal()) field.character_ = eta;
  return field;
}

CyclicExtension CyclicExtension::make(u64 conductor, u64 degree) {
  if (degree == 1) return rationals();
  return from_character(make_character(conductor, degree));
}

CharacterProduct CyclicExtension::twist_character(i64 power) const {
  if (!character_) return {};
  return CharacterProduct(character_->pow(power));
}

std::string CyclicExtension::describe() const {
  if (!character_) return "Q";
  return "E[degree=" + std::to_string(degree()) + "," + character_->describe() + "]";
}

double SplittingData::residue_cardinality() const {
  return std::pow(static_cast<double>(p), static_cast<double>(f));
}

SplittingData splitting_data(const CyclicExtension& field, u64 p) {
  if (!is_prime(p)) throw DomainError("splitting_data: " + std::to_string(p) + " is not prime");
  SplittingData out;
  out.p = p;
  const u64 ell = field.degree();
  if (field.is_rationals()) return out;
  if (field.is_ramified(p)) {
    if (!is_prime(ell)) {
      throw UnsupportedCaseError("splitting_data: ramified prime " + std::to_string(p) +
                                 " in a field of composite degree " + std::to_string(ell));
    }
    out.e = ell;
    return out;
  }
  out.f = field.character()->value_order(static_cast<i64>(p));
  out.g = ell / out.f;
  return out;
}

bool splits_completely(const CyclicExtension& field, u64 p) {
  if (field.is_rationals()) return true;
  if (field.is_ramified(p)) return false;
  return field.character()->value_order(static_cast<i64>(p)) == 1;
}

bool splits_completely_in_compositum(const CyclicExtension& e, const CyclicExtension& f, u64 p) {
  return splits_completely(e, p) && splits_completely(f, p);
}

}  // namespace rslab
