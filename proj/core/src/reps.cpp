#include "rslab/reps.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "rslab/errors.hpp"

namespace rslab {

SatakeTable::SatakeTable(int rank, std::vector<std::uint32_t> primes, std::vector<Complex> parameters)
    : rank_(rank), primes_(std::move(primes)), parameters_(std::move(parameters)) {
  if (rank_ < 1) throw DomainError("SatakeTable: rank must be >= 1");
  if (parameters_.size() != primes_.size() * static_cast<std::size_t>(rank_)) {
    throw DomainError("SatakeTable: expected " + std::to_string(rank_) + " parameters per prime");
  }
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i]) || (i > 0 && primes_[i] <= primes_[i - 1])) {
      throw DomainError("SatakeTable: primes must be strictly increasing primes");
    }
  }
  for (const auto& z : parameters_) ensure_finite(z, "SatakeTable");
}

std::span<const Complex> SatakeTable::at(u64 p) const {
  if (p > limit()) {
    throw CapacityError("SatakeTable: p=" + std::to_string(p) + " beyond table limit " +
                        std::to_string(limit()));
  }
  const auto it = std::lower_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(p));
  if (it == primes_.end() || *it != p) {
    throw DomainError("SatakeTable: no row for " + std::to_string(p));
  }
  const auto offset = static_cast<std::size_t>(it - primes_.begin()) * static_cast<std::size_t>(rank_);
  return {parameters_.data() + offset, static_cast<std::size_t>(rank_)};
}

SatakeTable read_satake_csv(std::istream& in) {
  std::vector<std::uint32_t> primes;
  std::vector<Complex> params;
  int rank = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == 'p') continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3 || cells.size() % 2 == 0) {
      throw DomainError("read_satake_csv: row must be p,re_1,im_1,...: '" + line + "'");
    }
    const int m = static_cast<int>((cells.size() - 1) / 2);
    if (rank < 0) rank = m;
    if (m != rank) throw DomainError("read_satake_csv: inconsistent rank in row '" + line + "'");
    try {
      primes.push_back(static_cast<std::uint32_t>(std::stoul(cells[0])));
      for (int j = 0; j < m; ++j) {
        params.emplace_back(std::stod(cells[1 + 2 * j]), std::stod(cells[2 + 2 * j]));
      }
    } catch (const std::logic_error&) {
      throw DomainError("read_satake_csv: unparsable number in row '" + line + "'");
    }
  }
  if (rank < 0) throw DomainError("read_satake_csv: no rows");
  // Contiguity: every prime up to the last row must be listed.
  std::size_t i = 0;
  for (u64 p = 2; p <= primes.back(); ++p) {
    if (!is_prime(p)) continue;
    if (i >= primes.size() || primes[i] != p) {
      throw DomainError("read_satake_csv: missing row for prime " + std::to_string(p));
    }
    ++i;
  }
  return SatakeTable(rank, std::move(primes), std::move(params));
}

AutomorphicRep AutomorphicRep::trivial() { return AutomorphicRep(); }

AutomorphicRep AutomorphicRep::from_character(const DirichletCharacter& chi) {
  AutomorphicRep rep;
  rep.twist_ = CharacterProduct(chi);
  return rep;
}

AutomorphicRep AutomorphicRep::from_cusp_form(std::shared_ptr<const CuspFormTable> form) {
  if (!form) throw DomainError("AutomorphicRep::from_cusp_form: null table");
  AutomorphicRep rep;
  rep.kind_ = RepKind::cusp_form;
  rep.rank_ = 2;
  rep.form_ = std::move(form);
  return rep;
}

AutomorphicRep AutomorphicRep::from_table(std::shared_ptr<const SatakeTable> table) {
  if (!table) throw DomainError("AutomorphicRep::from_table: null table");
  AutomorphicRep rep;
  rep.kind_ = RepKind::explicit_table;
  rep.rank_ = table->rank();
  rep.table_ = std::move(table);
  return rep;
}

u64 AutomorphicRep::table_limit() const noexcept {
  switch (kind_) {
    case RepKind::cusp_form: return form_->limit();
    case RepKind::explicit_table: return table_->limit();
    case RepKind::character: break;
  }
  return std::numeric_limits<u64>::max();
}

SatakeSet AutomorphicRep::satake_at(u64 p) const {
  SatakeSet out;
  out.reserve(static_cast<std::size_t>(rank_));
  switch (kind_) {
    case RepKind::character:
      out.emplace_back(1.0, 0.0);
      break;
    case RepKind::cusp_form: {
      const double lambda = form_->normalized(p);
      const double half = 0.5 * lambda;
      const double im = std::sqrt(std::max(0.0, 1.0 - half * half));
      out.emplace_back(half, im);
      out.emplace_back(half, -im);
      break;
    }
    case RepKind::explicit_table: {
      const auto row = table_->at(p);
      out.assign(row.begin(), row.end());
      break;
    }
  }
  if (!twist_.is_trivial() || shift_ != 0.0) {
    const Complex factor = twist_(static_cast<i64>(p)) * imaginary_power(static_cast<double>(p), shift_);
    for (auto& a : out) a *= factor;
  }
  return out;
}

std::string AutomorphicRep::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case RepKind::character: os << "GL1"; break;
    case RepKind::cusp_form: os << "cuspform[k=" << form_->weight() << ",limit=" << form_->limit() << "]"; break;
    case RepKind::explicit_table: os << "table[m=" << rank_ << ",limit=" << table_->limit() << "]"; break;
  }
  if (!twist_.is_trivial()) os << " x " << twist_.describe();
  if (shift_ != 0.0) os << " x |det|^(i*" << shift_ << ")";
  return os.str();
}

AutomorphicRep twist(const AutomorphicRep& rep, const CharacterProduct& chi, double tau) {
  AutomorphicRep out = rep;
  out.twist_ = rep.twist_ * chi;
  out.shift_ = rep.shift_ + tau;
  return out;
}

std::vector<AutomorphicRep> twist_family(const BaseChangedRep& bc) {
  std::vector<AutomorphicRep> family;
  const u64 ell = bc.field.degree();
  family.reserve(ell);
  for (u64 a = 0; a < ell; ++a) {
    family.push_back(twist(bc.descent, bc.field.twist_character(static_cast<i64>(a)), 0.0));
  }
  return family;
}

std::vector<SatakeSet> base_change_satake(const BaseChangedRep& bc, u64 p) {
  if (bc.field.is_ramified(p)) {
    throw RamifiedPlaceError("base_change_satake: p=" + std::to_string(p) + " ramifies in " +
                             bc.field.describe());
  }
  const auto split = splitting_data(bc.field, p);
  SatakeSet local = bc.descent.satake_at(p);
  if (split.f > 1) {
    for (auto& a : local) a = ipow(a, split.f);
  }
  return std::vector<SatakeSet>(split.g, local);
}

}  // namespace rslab
