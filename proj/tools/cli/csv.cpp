#include "rslab/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "rslab/cli/config.hpp"

namespace rslab::cli {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  // Shortest round-trip form, never more than 17 significant digits. Plain
  // notation in the usual range so grid points read as integers.
  const double mag = std::abs(v);
  const auto format = (mag >= 1e-4 && mag < 1e16) || v == 0.0 ? std::chars_format::fixed
                                                               : std::chars_format::scientific;
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v, format);
  return std::string(buf.data(), result.ptr);
}

void write_report_csv(std::ostream& out, const PartialSumReport& report) {
  out << "x,S_re,S_im,M_re,M_im,abs_err\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out << format_double(report.grid[i]) << ',' << format_double(report.sums[i].real()) << ','
        << format_double(report.sums[i].imag()) << ',' << format_double(report.mains[i].real()) << ','
        << format_double(report.mains[i].imag()) << ',' << format_double(report.abs_err[i]) << '\n';
  }
}

void write_coefficients_csv(std::ostream& out, const CoefficientStream& stream) {
  out << "n,re,im\n";
  for (const auto& e : stream.entries) {
    out << e.n << ',' << format_double(e.value.real()) << ',' << format_double(e.value.imag()) << '\n';
  }
}

NumericCsv read_numeric_csv(std::istream& in) {
  NumericCsv csv;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV");
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    csv.header.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) throw ConfigError("non-numeric CSV field in: " + line);
      row.push_back(v);
      if (next == end) break;
      if (*next != ',') throw ConfigError("malformed CSV row: " + line);
      p = next + 1;
    }
    if (row.size() != csv.header.size()) throw ConfigError("ragged CSV row: " + line);
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

}  // namespace rslab::cli
