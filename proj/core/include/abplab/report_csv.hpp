#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "abplab/estimates.hpp"

namespace abplab {

/// One CSV row. The verdict is free text so that non-estimate checks
/// (residuals, admissibility, norm growth) share the estimates schema.
struct ReportRow {
  std::string theorem_id;
  double h = 0.0;
  std::string profile;
  std::string params;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double empirical_constant = 0.0;
  std::string verdict;
  std::string notes;
};

/// Notes followed by "key=value" metrics, separated by "; ".
ReportRow to_row(const EstimateReport& r);

inline constexpr const char* kEstimateColumns =
    "theorem_id,h,profile,params,lhs,rhs_core,empirical_constant,verdict,notes";

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

/// "# abplab-csv v1 <schema>" comment line.
void write_csv_header(std::ostream& os, const std::string& schema, const std::string& columns);
void write_row(std::ostream& os, const ReportRow& row);
void write_estimates_csv(std::ostream& os, const std::vector<ReportRow>& rows, const std::string& schema = "estimates");

}  // namespace abplab
