// config.hpp
//
// JSON specs for representations, fields and pairs, as read by the rslab
// command line tool. Any spec object may be replaced by a string naming a
// JSON file; relative paths resolve against the file that mentions them.
//
//   field: {"conductor": 5, "order": 2}        ({} or {"order": 1} is Q)
//   rep:   {"kind": "trivial"}
//          {"kind": "character", "conductor": 7, "order": 3, "power": 1}
//          {"kind": "cuspform", "weight": 12, "limit": 100000}
//          {"kind": "explicit", "csv": "table.csv"}
//          plus optional "twist": {"conductor": 5, "order": 2, "power": 1}
//          (or a list of them) and "tau": 0.7
//   pair:  {"pi": rep, "pi_prime": rep, "field": field}          same field
//          {"pi": rep, "pi_prime": rep, "field_E": .., "field_F": ..}
//                                                   base-change product
// "order" defaults to 2 wherever a character is described.

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "rslab/errors.hpp"
#include "rslab/rankin.hpp"

namespace rslab::cli {

using Json = nlohmann::json;

// Malformed or inconsistent configuration; the CLI exits with status 2.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

Json load_json(const std::filesystem::path& path);

// A spec node together with the directory its relative paths refer to.
struct SpecNode {
  Json value;
  std::filesystem::path base_dir;
};

// Follows a string node to the file it names; objects pass through.
SpecNode resolve(const Json& node, const std::filesystem::path& base_dir);
SpecNode load_spec(const std::filesystem::path& path);

DirichletCharacter parse_character(const Json& spec);
CyclicExtension parse_field(const SpecNode& spec);
AutomorphicRep parse_rep(const SpecNode& spec);
RankinPair parse_pair(const SpecNode& spec);

// Weight-12 eigenvalue table covering at least `limit`. Tables are shared
// within the process and, when RSLAB_CACHE_DIR is set, cached on disk.
std::shared_ptr<const CuspFormTable> cusp_form_table(int weight, u64 limit);

// "lo:hi:geometric" (optionally ":step" in decades, default 0.5),
// "lo:hi:linear:count", or a comma separated list of points.
std::vector<double> parse_grid(const std::string& text);

// "2", "1.5", "2+1i", "2-0.5i", "3i".
Complex parse_complex(const std::string& text);

}  // namespace rslab::cli
