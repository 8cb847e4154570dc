// csv.hpp
//
// Locale-independent CSV output: '.' decimal point, no grouping, shortest
// round-trip form with at most 17 significant digits.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rslab/pnt.hpp"

namespace rslab::cli {

std::string format_double(double v);

// x,S_re,S_im,M_re,M_im,abs_err
void write_report_csv(std::ostream& out, const PartialSumReport& report);
// n,re,im
void write_coefficients_csv(std::ostream& out, const CoefficientStream& stream);

struct NumericCsv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Header line plus rows of numbers; ConfigError on anything else.
NumericCsv read_numeric_csv(std::istream& in);

}  // namespace rslab::cli
