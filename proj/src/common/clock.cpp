#include "common/clock.hpp"

#include <cstdio>
#include <ctime>

#include "common/error.hpp"

namespace tutor {

namespace {

std::tm to_tm(SysTime t) {
    const std::time_t secs = std::chrono::system_clock::to_time_t(
        std::chrono::time_point_cast<std::chrono::seconds>(t));
    std::tm tm{};
    gmtime_r(&secs, &tm);
    return tm;
}

}  // namespace

std::string format_rfc3339(SysTime t) {
    auto secs = std::chrono::floor<std::chrono::seconds>(t);
    auto micros = (t - secs).count();
    std::tm tm = to_tm(t);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<long long>(micros));
    return buf;
}

std::string format_date(SysTime t) {
    std::tm tm = to_tm(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday);
    return buf;
}

SysTime parse_rfc3339(const std::string& s) {
    int y, mo, d, h, mi, sec;
    int consumed = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &sec, &consumed) != 6)
        throw Error(ErrorCode::InvalidArgument, "bad timestamp: " + s);
    long long micros = 0;
    std::size_t pos = static_cast<std::size_t>(consumed);
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (digits < 6) {
                micros = micros * 10 + (s[pos] - '0');
                ++digits;
            }
            ++pos;
        }
        for (; digits < 6; ++digits) micros *= 10;
    }
    if (pos >= s.size() || (s[pos] != 'Z' && s[pos] != 'z'))
        throw Error(ErrorCode::InvalidArgument, "timestamp must be UTC (Z): " + s);
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = sec;
    const std::time_t secs = timegm(&tm);
    return std::chrono::time_point_cast<std::chrono::microseconds>(
               std::chrono::system_clock::from_time_t(secs)) +
           std::chrono::microseconds(micros);
}

}  // namespace tutor
