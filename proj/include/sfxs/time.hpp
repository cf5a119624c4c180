#pragma once

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <string>
#include <string_view>

#include "sfxs/error.hpp"

namespace sfxs::time {

/// Seconds since the Unix epoch, always UTC.
using UtcSeconds = std::int64_t;

struct Civil {
    int year;
    int month;  // 1..12
    int day;    // 1..31
    int hour;
    int minute;
    int second;
};

// Days-from-civil conversion (proleptic Gregorian), no timezone involvement.
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Civil{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d), 0, 0, 0};
}

inline UtcSeconds from_civil(const Civil& c) {
    return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 + c.minute * 60 + c.second;
}

inline Civil to_civil(UtcSeconds t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    Civil c = civil_from_days(days);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

inline std::string to_iso8601(UtcSeconds t) {
    Civil c = to_civil(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day, c.hour,
                  c.minute, c.second);
    return buf;
}

inline bool valid_civil(const Civil& c) {
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31) return false;
    if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 || c.second < 0 || c.second > 60)
        return false;
    // round-trip check catches day-of-month overflow (e.g. Feb 30)
    Civil back = civil_from_days(days_from_civil(c.year, c.month, c.day));
    return back.year == c.year && back.month == c.month && back.day == c.day;
}

/// Parses "YYYY-MM-DDTHH:MM:SSZ".
inline UtcSeconds parse_iso8601(std::string_view s) {
    Civil c{};
    char tsep = 0, zsep = 0;
    if (s.size() != 20 ||
        std::sscanf(std::string(s).c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c", &c.year, &c.month, &c.day,
                    &tsep, &c.hour, &c.minute, &c.second, &zsep) != 8 ||
        tsep != 'T' || zsep != 'Z' || !valid_civil(c)) {
        raise(Errc::invalid_argument, "bad timestamp, expected YYYY-MM-DDTHH:MM:SSZ");
    }
    return from_civil(c);
}

inline UtcSeconds now() {
    return static_cast<UtcSeconds>(std::time(nullptr));
}

} // namespace sfxs::time
