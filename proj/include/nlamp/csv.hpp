#pragma once

// Locale-independent CSV number formatting and parsing.

#include <string>
#include <string_view>
#include <vector>

namespace nlamp::csv {

/// 17 significant digits via std::to_chars; +inf becomes the token `inf`.
std::string format(double value);
std::string format(long long value);

/// Inverse of format(); accepts `inf`, `-inf` and `nan`.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep = ',');

std::string join(const std::vector<std::string>& fields, char sep = ',');

}  // namespace nlamp::csv
