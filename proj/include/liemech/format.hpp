#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace liemech {

/// Shortest decimal that round-trips to the same double (at most 17 significant digits).
std::string format_double(double x);

/// Parses a whole string as a double; throws ParseError mentioning `what` otherwise.
double parse_double(std::string_view text, std::string_view what);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace liemech
