#include "rslab/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>

#include "rslab/pnt.hpp"

namespace rslab::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
T get_or(const Json& spec, const char* key, T fallback) {
  if (!spec.contains(key)) return fallback;
  try {
    return spec.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("spec field '") + key + "': " + e.what());
  }
}

template <typename T>
T require(const Json& spec, const char* key) {
  if (!spec.is_object() || !spec.contains(key)) {
    throw ConfigError(std::string("spec is missing required field '") + key + "': " + spec.dump());
  }
  return get_or<T>(spec, key, T{});
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

CharacterProduct parse_twist(const Json& node) {
  if (node.is_array()) {
    CharacterProduct out;
    for (const auto& item : node) out = out * parse_twist(item);
    return out;
  }
  if (!node.is_object()) throw ConfigError("twist must be an object or a list of objects");
  return CharacterProduct(parse_character(node));
}

fs::path cache_file(int weight, u64 limit) {
  const char* dir = std::getenv("RSLAB_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return fs::path(dir) / ("cusp_weight" + std::to_string(weight) + "_" + std::to_string(limit) + ".csv");
}

}  // namespace

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

SpecNode resolve(const Json& node, const fs::path& base_dir) {
  if (node.is_string()) {
    fs::path target = node.get<std::string>();
    if (target.is_relative()) target = base_dir / target;
    return load_spec(target);
  }
  if (!node.is_object()) throw ConfigError("expected an object or a file name, got " + node.dump());
  return {node, base_dir};
}

SpecNode load_spec(const fs::path& path) {
  return {load_json(path), path.has_parent_path() ? path.parent_path() : fs::path(".")};
}

DirichletCharacter parse_character(const Json& spec) {
  const auto conductor = require<u64>(spec, "conductor");
  const auto order = get_or<u64>(spec, "order", 2);
  const auto power = get_or<i64>(spec, "power", 1);
  return make_character(conductor, order).pow(power);
}

CyclicExtension parse_field(const SpecNode& spec) {
  const Json& v = spec.value;
  if (!v.is_object()) throw ConfigError("field spec must be an object");
  const auto degree = get_or<u64>(v, "order", get_or<u64>(v, "degree", v.contains("conductor") ? 2 : 1));
  if (degree == 1) return CyclicExtension::rationals();
  return CyclicExtension::make(require<u64>(v, "conductor"), degree);
}

AutomorphicRep parse_rep(const SpecNode& spec) {
  const Json& v = spec.value;
  const auto kind = require<std::string>(v, "kind");
  AutomorphicRep rep = AutomorphicRep::trivial();
  if (kind == "trivial") {
    // nothing to add
  } else if (kind == "character") {
    rep = AutomorphicRep::from_character(parse_character(v));
  } else if (kind == "cuspform") {
    const auto weight = get_or<int>(v, "weight", 12);
    const auto limit = require<u64>(v, "limit");
    rep = AutomorphicRep::from_cusp_form(cusp_form_table(weight, limit));
  } else if (kind == "explicit") {
    fs::path csv = require<std::string>(v, "csv");
    if (csv.is_relative()) csv = spec.base_dir / csv;
    std::ifstream in(csv);
    if (!in) throw ConfigError("cannot open Satake table " + csv.string());
    rep = AutomorphicRep::from_table(std::make_shared<const SatakeTable>(read_satake_csv(in)));
  } else {
    throw ConfigError("unknown representation kind '" + kind + "'");
  }
  const CharacterProduct chi = v.contains("twist") ? parse_twist(v.at("twist")) : CharacterProduct();
  const double tau = get_or<double>(v, "tau", 0.0);
  if (!chi.is_trivial() || tau != 0.0) rep = twist(rep, chi, tau);
  return rep;
}

RankinPair parse_pair(const SpecNode& spec) {
  const Json& v = spec.value;
  if (!v.is_object() || !v.contains("pi") || !v.contains("pi_prime")) {
    throw ConfigError("pair spec needs 'pi' and 'pi_prime'");
  }
  const auto pi = parse_rep(resolve(v.at("pi"), spec.base_dir));
  const auto pi_prime = parse_rep(resolve(v.at("pi_prime"), spec.base_dir));
  const bool across = v.contains("field_E") || v.contains("field_F");
  if (across) {
    if (v.contains("field")) throw ConfigError("pair spec mixes 'field' with 'field_E'/'field_F'");
    const auto e = v.contains("field_E") ? parse_field(resolve(v.at("field_E"), spec.base_dir))
                                         : CyclicExtension::rationals();
    const auto f = v.contains("field_F") ? parse_field(resolve(v.at("field_F"), spec.base_dir))
                                         : CyclicExtension::rationals();
    return RankinPair::across_fields({pi, e}, {pi_prime, f});
  }
  const auto field = v.contains("field") ? parse_field(resolve(v.at("field"), spec.base_dir))
                                         : CyclicExtension::rationals();
  return RankinPair::same_field({pi, field}, {pi_prime, field});
}

std::shared_ptr<const CuspFormTable> cusp_form_table(int weight, u64 limit) {
  if (weight != 12) {
    throw UnsupportedCaseError("only the weight 12 form Delta is generated; supply other forms as an "
                               "explicit Satake table");
  }
  static std::mutex mutex;
  static std::map<u64, std::shared_ptr<const CuspFormTable>> tables;
  std::lock_guard lock(mutex);
  const auto hit = tables.lower_bound(limit);
  if (hit != tables.end()) return hit->second;

  std::shared_ptr<const CuspFormTable> table;
  const fs::path cached = cache_file(weight, limit);
  if (!cached.empty() && fs::exists(cached)) {
    std::ifstream in(cached);
    table = std::make_shared<const CuspFormTable>(read_cusp_table(in));
  } else {
    table = std::make_shared<const CuspFormTable>(ramanujan_tau_table(limit));
    if (!cached.empty()) {
      std::error_code ec;
      fs::create_directories(cached.parent_path(), ec);
      const fs::path tmp = cached.string() + ".tmp";
      std::ofstream out(tmp);
      if (out) {
        write_cusp_table(out, *table);
        out.close();
        fs::rename(tmp, cached, ec);
      }
    }
  }
  tables[limit] = table;
  return table;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (sep == ',') {
    std::vector<double> grid;
    for (const auto& p : parts) grid.push_back(parse_number(p));
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i] > grid[i - 1])) throw ConfigError("grid points must be strictly increasing");
    }
    return grid;
  }
  if (parts.size() < 3) throw ConfigError("grid must look like lo:hi:geometric or lo:hi:linear:count");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  if (!(lo >= 1.0) || !(hi >= lo)) throw ConfigError("grid needs 1 <= lo <= hi");
  if (parts[2] == "geometric") {
    const double step = parts.size() > 3 ? parse_number(parts[3]) : 0.5;
    if (!(step > 0.0)) throw ConfigError("geometric grid step must be positive");
    return geometric_grid(lo, hi, step);
  }
  if (parts[2] == "linear") {
    if (parts.size() < 4) throw ConfigError("linear grid needs a point count");
    const auto count = static_cast<int>(parse_number(parts[3]));
    if (count < 2) throw ConfigError("linear grid needs at least two points");
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
      const double x = std::round(lo + (hi - lo) * i / (count - 1));
      if (grid.empty() || x > grid.back()) grid.push_back(x);
    }
    return grid;
  }
  throw ConfigError("unknown grid spacing '" + parts[2] + "'");
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw ConfigError("empty complex number");
  if (text.back() != 'i') return {parse_number(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [](std::string s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.erase(0, 1);
    return parse_number(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_number(body.substr(0, split)), imag_of(body.substr(split))};
}

}  // namespace rslab::cli
