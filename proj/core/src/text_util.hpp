#pragma once

// Small parsing helpers shared by the line-oriented data formats.

#include <string>
#include <string_view>
#include <vector>

#include "fermatsym/ntkernel.hpp"

namespace fermatsym::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

/// Strict decimal integer with optional sign; throws std::invalid_argument.
inline Int parse_int(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) i = 1;
  if (i == s.size()) throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return Int(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace fermatsym::detail
