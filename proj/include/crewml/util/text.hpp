#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace crewml {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Collapse every whitespace run to a single space and trim the ends.
std::string collapse_whitespace(std::string_view s);

/// Case-folded alphanumeric tokens ("Top-5 features!" -> {top, 5, features}).
std::vector<std::string> tokenize(std::string_view s);
std::set<std::string> token_set(std::string_view s);

/// Jaccard similarity of the two case-folded token sets, in [0, 1].
double jaccard(std::string_view a, std::string_view b);

std::vector<std::string> split_lines(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);
bool contains_ci(std::string_view haystack, std::string_view needle);

std::string format_fixed(double v, int decimals);
/// "%.2f" with a single trailing zero stripped: 20.00 -> "20.0", 5.42 -> "5.42".
std::string format_stat_bound(double v);
/// Up to 16 significant digits, shortest form (metric readouts).
std::string format_metric(double v);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace crewml
