#include "abplab/report_csv.hpp"

#include "abplab/format.hpp"

namespace abplab {

ReportRow to_row(const EstimateReport& r) {
  ReportRow row{r.theorem_id, r.h, r.profile, r.params, r.lhs, r.rhs_core, r.empirical_constant, to_string(r.verdict),
                r.notes};
  for (const auto& [key, value] : r.metrics) {
    if (!row.notes.empty()) row.notes += "; ";
    row.notes += key + "=" + format_g17(value);
  }
  return row;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_header(std::ostream& os, const std::string& schema, const std::string& columns) {
  os << "# abplab-csv v1 " << schema << '\n' << columns << '\n';
}

void write_row(std::ostream& os, const ReportRow& row) {
  os << csv_escape(row.theorem_id) << ',' << format_g17(row.h) << ',' << csv_escape(row.profile) << ','
     << csv_escape(row.params) << ',' << format_g17(row.lhs) << ',' << format_g17(row.rhs_core) << ','
     << format_g17(row.empirical_constant) << ',' << csv_escape(row.verdict) << ',' << csv_escape(row.notes) << '\n';
}

void write_estimates_csv(std::ostream& os, const std::vector<ReportRow>& rows, const std::string& schema) {
  write_csv_header(os, schema, kEstimateColumns);
  for (const auto& r : rows) write_row(os, r);
}

}  // namespace abplab
