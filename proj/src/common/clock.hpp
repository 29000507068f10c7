#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace tutor {

using SysTime = std::chrono::time_point<std::chrono::system_clock, std::chrono::microseconds>;

inline SysTime now_utc() {
    return std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
}

// RFC 3339, UTC, microsecond precision: 2025-03-01T09:30:00.000000Z
std::string format_rfc3339(SysTime t);
// Accepts the format above, with or without fractional seconds.
SysTime parse_rfc3339(const std::string& s);
// YYYY-MM-DD of the UTC date.
std::string format_date(SysTime t);

}  // namespace tutor
