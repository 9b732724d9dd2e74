#pragma once

// Line-record helpers shared by the file readers and writers.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clientnet::text {

std::vector<std::string_view> split_tabs(std::string_view line);

// Tabs, newlines and backslashes inside free-text fields are escaped.
std::string escape(std::string_view raw);
std::optional<std::string> unescape(std::string_view field);

// Shortest representation that round-trips to the same double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

std::string to_lower(std::string_view s);

inline bool is_skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

inline std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace clientnet::text
