#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace threatstream {

inline bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = ascii_lower(c);
  return out;
}

/// Lowercases and splits on every run of non-alphanumeric bytes.
/// Non-ASCII bytes count as separators.
inline std::vector<std::string> split_alnum(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_ascii_alnum(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

/// Canonical form for multi-word terms: alphanumeric tokens joined by one space.
inline std::string normalize_phrase(std::string_view text) {
  std::string out;
  for (const auto& tok : split_alnum(text)) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace threatstream
