#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abplab::cli {

/// Exit codes: 0 success, 1 error or unmet expectation, 2 hypothesis failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1/64" or a decimal literal.
double parse_h(const std::string& text);
/// Comma-separated spacings; throws unless strictly decreasing.
std::vector<double> parse_h_list(const std::string& text);

}  // namespace abplab::cli
