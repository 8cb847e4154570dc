#include "rslab/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>

#include "rslab/cli/csv.hpp"

namespace rslab::cli {

namespace {

void emit(const path& target, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (target.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + target.string());
  write(file);
  if (!file) throw ConfigError("write failed for " + target.string());
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json matches_json(const std::vector<TwistMatch>& matches) {
  Json out = Json::array();
  for (const auto& m : matches) {
    out.push_back({{"i", m.i}, {"j", m.j}, {"tau", m.tau}, {"max_residual", m.max_residual}});
  }
  return out;
}

std::string restriction_name(Restriction r) {
  switch (r) {
    case Restriction::none: return "none";
    case Restriction::split_E: return "split-E";
    case Restriction::split_EF: return "split-EF";
  }
  return "none";
}

CyclicExtension field_or_q(const path& file) {
  return file.empty() ? CyclicExtension::rationals() : parse_field(load_spec(file));
}

}  // namespace

BaseChangedRep parse_base_change(const SpecNode& spec) {
  const Json& v = spec.value;
  if (!v.is_object()) throw ConfigError("base-change spec must be an object");
  const char* rep_key = v.contains("rep") ? "rep" : "pi";
  if (!v.contains(rep_key)) throw ConfigError("base-change spec needs 'rep' (or 'pi')");
  const auto rep = parse_rep(resolve(v.at(rep_key), spec.base_dir));
  const char* field_key = v.contains("field") ? "field" : "field_E";
  const auto field = v.contains(field_key) ? parse_field(resolve(v.at(field_key), spec.base_dir))
                                           : CyclicExtension::rationals();
  return {rep, field};
}

int run_split(const SplitOptions& opt, std::ostream& out) {
  const auto field = CyclicExtension::make(opt.conductor, opt.order);
  const auto primes = sieve_primes(opt.pmax);
  std::vector<SplittingData> rows;
  for (const u64 p : primes.primes()) rows.push_back(splitting_data(field, p));
  emit(opt.out, out, [&](std::ostream& os) {
    os << "p,e,f,g\n";
    for (const auto& r : rows) os << r.p << ',' << r.e << ',' << r.f << ',' << r.g << '\n';
  });
  return 0;
}

int run_coeffs(const CoeffsOptions& opt, std::ostream& out) {
  const auto pair = parse_pair(load_spec(opt.spec));
  const auto stream = generate_stream(pair, opt.xmax, opt.threads);
  emit(opt.out, out, [&](std::ostream& os) { write_coefficients_csv(os, stream); });
  return 0;
}

Restriction parse_restriction(const std::string& text) {
  if (text == "none") return Restriction::none;
  if (text == "split-E") return Restriction::split_E;
  if (text == "split-EF") return Restriction::split_EF;
  throw ConfigError("--restrict must be none, split-E or split-EF (got '" + text + "')");
}

PntSumResult compute_pnt_sum(const RankinPair& pair, const std::vector<double>& grid,
                             Restriction restriction, int threads) {
  if (grid.empty()) throw ConfigError("empty grid");
  PntSumResult result;
  result.verdict = assess_pair(pair);
  const auto& verdict = result.verdict;
  auto& report = result.report;
  if (restriction == Restriction::none) {
    const auto stream = generate_stream(pair, static_cast<u64>(std::floor(grid.back())), threads);
    report = make_report(stream, grid, verdict.tau0, verdict.pole_order, threads);
  } else {
    const auto mode = restriction == Restriction::split_E ? SplitMode::field_E : SplitMode::compositum_EF;
    report.grid = grid;
    report.tau0 = verdict.tau0;
    report.pole_order = verdict.tau0 ? verdict.pole_order : 0;
    for (const double x : grid) {
      const Complex s = split_restricted_sum(pair, x, mode, threads);
      const Complex m = verdict.tau0 ? static_cast<double>(report.pole_order) * main_term(x, *verdict.tau0)
                                     : Complex{0.0, 0.0};
      report.sums.push_back(s);
      report.mains.push_back(m);
      report.abs_err.push_back(std::abs(s - m));
    }
    try {
      report.fitted_c = error_curve_fit(report).c;
    } catch (const FitError&) {
      report.fitted_c.reset();
    }
  }

  const bool across = pair.mode() == RankinPair::Mode::across_fields;
  report.metadata["ramified_convention"] = "all-parameters-zero";
  if (across) {
    report.metadata["coprime_degrees"] = pair.coprime_degrees() ? "true" : "false";
    report.metadata["compositum_hypothesis"] =
        pair.coprime_degrees() ? "assumed (coprime prime degrees)" : "unverified (degrees not coprime)";
  }

  Json& s = result.summary;
  s["pair"] = pair.describe();
  s["mode"] = across ? "across-fields" : "same-field";
  s["restrict"] = restriction_name(restriction);
  s["grid"] = report.grid;
  s["verdict"] = verdict.tau0 ? "equivalent" : "not-equivalent";
  s["tau0"] = optional_number(verdict.tau0);
  s["pole_order"] = report.pole_order;
  s["fitted_c"] = optional_number(report.fitted_c);
  s["matches"] = matches_json(verdict.matches);
  const std::size_t last = report.grid.size() - 1;
  const double x = report.grid[last];
  s["final"] = {{"x", x},
                {"S_re", report.sums[last].real()},
                {"S_im", report.sums[last].imag()},
                {"S_over_x", std::abs(report.sums[last]) / x},
                {"abs_err_over_x", report.abs_err[last] / x}};
  s["metadata"] = report.metadata;
  return result;
}

int run_pnt_sum(const PntSumOptions& opt, std::ostream& out) {
  const auto pair = parse_pair(load_spec(opt.spec));
  const auto grid = parse_grid(opt.grid);
  const auto result = compute_pnt_sum(pair, grid, parse_restriction(opt.restrict), opt.threads);
  emit(opt.out, out, [&](std::ostream& os) { write_report_csv(os, result.report); });
  if (!opt.summary.empty()) {
    emit(opt.summary, out, [&](std::ostream& os) { os << result.summary.dump(2) << '\n'; });
  } else if (!opt.out.empty()) {
    out << result.summary.dump(2) << '\n';
  }
  return 0;
}

double max_factorization_residual(const BaseChangedRep& bc, u64 pmax, const std::vector<Complex>& s) {
  double worst = 0.0;
  const auto primes = sieve_primes(pmax);
  for (const u64 p : primes.primes()) {
    if (bc.field.is_ramified(p) || bc.descent.is_ramified_at(p)) continue;
    for (const auto& z : s) worst = std::max(worst, factorization_residual(bc, p, z));
  }
  return worst;
}

int run_factor_check(const FactorCheckOptions& opt, std::ostream& out) {
  const auto bc = parse_base_change(load_spec(opt.spec));
  std::vector<Complex> points;
  for (const auto& text : opt.s) points.push_back(parse_complex(text));
  const double worst = max_factorization_residual(bc, opt.pmax, points);
  out << "max residual " << format_double(worst) << " over unramified p <= " << opt.pmax << " ("
      << bc.descent.describe() << " over " << bc.field.describe() << ")\n";
  if (!(worst <= opt.tol)) {
    std::cerr << "rslab: factorization residual " << format_double(worst) << " exceeds tolerance "
              << format_double(opt.tol) << '\n';
    return 1;
  }
  return 0;
}

Json equivalence_report(const AutomorphicRep& a, const CyclicExtension& e, const AutomorphicRep& b,
                        const CyclicExtension& f, double tol) {
  const auto primes = default_test_primes(a, b, e, f);
  const auto matches = twisted_pairs(a, e, b, f, primes, tol);
  const auto check = pair_group_check(matches, e.degree(), f.degree());
  Json report;
  report["ell"] = e.degree();
  report["q"] = f.degree();
  report["matches"] = matches_json(matches);
  report["tau0"] = matches.empty() ? Json(nullptr) : Json(matches.front().tau);
  report["group_check"] = {{"pass", check.pass()},
                           {"subgroup", check.subgroup},
                           {"divides_gcd", check.divides_gcd},
                           {"unique_per_i", check.unique_per_i},
                           {"common_tau", check.common_tau},
                           {"count", check.count},
                           {"gcd", check.gcd},
                           {"witnesses", check.witnesses}};
  report["test_primes"] = primes;
  return report;
}

int run_equiv(const EquivOptions& opt, std::ostream& out) {
  const auto a = parse_rep(load_spec(opt.spec_a));
  const auto b = parse_rep(load_spec(opt.spec_b));
  const auto report = equivalence_report(a, field_or_q(opt.field_e), b, field_or_q(opt.field_f), opt.tol);
  emit(opt.out, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  if (!report["group_check"]["pass"].get<bool>()) {
    std::cerr << "rslab: group check failed: " << report["group_check"]["witnesses"].dump() << '\n';
    return 1;
  }
  return 0;
}

int run_hyp_h(const HypHOptions& opt, std::ostream& out) {
  const auto bc = parse_base_change(load_spec(opt.spec));
  const auto grid = parse_grid(opt.grid);
  const auto partials = hypothesis_h_diagnostic(bc, opt.k, grid);
  emit(opt.out, out, [&](std::ostream& os) {
    os << "P,partial\n";
    for (std::size_t i = 0; i < partials.size(); ++i) {
      os << format_double(grid[i]) << ',' << format_double(partials[i]) << '\n';
    }
  });
  return 0;
}

}  // namespace rslab::cli
