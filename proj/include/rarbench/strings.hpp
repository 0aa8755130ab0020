#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rarbench {

std::string to_lower(std::string_view s);

// Whitespace-separated words, empty pieces dropped.
std::vector<std::string> split_words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string trim(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

// Number of non-overlapping occurrences of `needle` in `haystack`.
int count_occurrences(std::string_view haystack, std::string_view needle);

// Fixed-point percent rendering with half-away-from-zero rounding, e.g. 64.949 -> "64.95".
// `value` is already on the percent scale.
std::string format_percent(double value);

// Half-away-from-zero rounding to 2 decimals, returned as integer hundredths.
long long to_cents(double value);

}  // namespace rarbench
