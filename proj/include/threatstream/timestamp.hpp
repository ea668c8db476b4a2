#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "threatstream/error.hpp"

namespace threatstream {

/// UTC instant with millisecond precision.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

namespace detail {

inline int read_digits(std::string_view s, std::size_t& pos, std::size_t count,
                       std::string_view original) {
  if (pos + count > s.size()) {
    throw ParseError("truncated timestamp '" + std::string(original) + "'");
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + count, value);
  if (ec != std::errc{} || ptr != s.data() + pos + count) {
    throw ParseError("invalid timestamp '" + std::string(original) + "'");
  }
  pos += count;
  return value;
}

inline void expect_char(std::string_view s, std::size_t& pos, char c,
                        std::string_view original) {
  if (pos >= s.size() || s[pos] != c) {
    throw ParseError("invalid timestamp '" + std::string(original) + "'");
  }
  ++pos;
}

}  // namespace detail

/// Parses an ISO-8601 instant: `YYYY-MM-DD[T| ]hh:mm:ss[.fff][Z|±hh:mm]`.
/// A missing zone designator means UTC. Fractions beyond milliseconds are
/// truncated.
inline Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  const int y = detail::read_digits(text, pos, 4, text);
  detail::expect_char(text, pos, '-', text);
  const int mo = detail::read_digits(text, pos, 2, text);
  detail::expect_char(text, pos, '-', text);
  const int d = detail::read_digits(text, pos, 2, text);
  if (pos >= text.size() || (text[pos] != 'T' && text[pos] != ' ')) {
    throw ParseError("invalid timestamp '" + std::string(text) + "'");
  }
  ++pos;
  const int hh = detail::read_digits(text, pos, 2, text);
  detail::expect_char(text, pos, ':', text);
  const int mm = detail::read_digits(text, pos, 2, text);
  detail::expect_char(text, pos, ':', text);
  const int ss = detail::read_digits(text, pos, 2, text);

  int millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int scale = 100;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
      ++digits;
    }
    if (digits == 0) throw ParseError("invalid timestamp '" + std::string(text) + "'");
  }

  int offset_minutes = 0;
  if (pos < text.size()) {
    if (text[pos] == 'Z') {
      ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
      const int sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      const int oh = detail::read_digits(text, pos, 2, text);
      if (pos < text.size() && text[pos] == ':') ++pos;
      const int om = detail::read_digits(text, pos, 2, text);
      if (oh > 23 || om > 59) throw ParseError("invalid zone offset in '" + std::string(text) + "'");
      offset_minutes = sign * (oh * 60 + om);
    }
  }
  if (pos != text.size()) {
    throw ParseError("trailing characters in timestamp '" + std::string(text) + "'");
  }

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59) {
    throw ParseError("timestamp out of range '" + std::string(text) + "'");
  }
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} + milliseconds{millis} -
         minutes{offset_minutes};
}

/// Formats as `YYYY-MM-DDThh:mm:ss.fffZ`.
inline std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss<milliseconds> tod{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()),
                static_cast<int>(tod.subseconds().count()));
  return buf;
}

}  // namespace threatstream
