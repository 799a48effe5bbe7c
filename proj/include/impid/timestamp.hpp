/*
 * Copyright 2026 The impid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// ISO-8601 UTC timestamps and simple durations.

#ifndef IMPID_TIMESTAMP_HPP
#define IMPID_TIMESTAMP_HPP

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "impid/model.hpp"

namespace impid {

namespace detail {
inline std::optional<int> fixed_digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}
}  // namespace detail

// Accepts YYYY-MM-DDTHH:MM:SS with optional fractional seconds, terminated by
// Z or +00:00. Fractions are truncated.
inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  auto year_v = detail::fixed_digits(s, 0, 4);
  auto month_v = detail::fixed_digits(s, 5, 2);
  auto day_v = detail::fixed_digits(s, 8, 2);
  auto hour_v = detail::fixed_digits(s, 11, 2);
  auto min_v = detail::fixed_digits(s, 14, 2);
  auto sec_v = detail::fixed_digits(s, 17, 2);
  if (!year_v || !month_v || !day_v || !hour_v || !min_v || !sec_v) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't') || s[13] != ':' || s[16] != ':')
    return std::nullopt;
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos, ++digits;
    if (digits == 0) return std::nullopt;
  }
  std::string_view zone = s.substr(pos);
  if (zone != "Z" && zone != "z" && zone != "+00:00") return std::nullopt;
  year_month_day ymd{year{*year_v}, month{static_cast<unsigned>(*month_v)}, day{static_cast<unsigned>(*day_v)}};
  if (!ymd.ok() || *hour_v > 23 || *min_v > 59 || *sec_v > 59) return std::nullopt;
  return sys_days{ymd} + hours{*hour_v} + minutes{*min_v} + seconds{*sec_v};
}

inline std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// Durations such as "14d", "36h", "90m", "3600s".
inline std::optional<std::chrono::seconds> parse_duration(std::string_view s) {
  if (s.size() < 2) return std::nullopt;
  long long v = 0;
  for (char c : s.substr(0, s.size() - 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 100000000LL) return std::nullopt;
  }
  switch (s.back()) {
    case 'd': return std::chrono::seconds{v * 86400};
    case 'h': return std::chrono::seconds{v * 3600};
    case 'm': return std::chrono::seconds{v * 60};
    case 's': return std::chrono::seconds{v};
    default: return std::nullopt;
  }
}

}  // namespace impid

#endif  // IMPID_TIMESTAMP_HPP
