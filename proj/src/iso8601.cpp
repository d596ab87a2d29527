// SPDX-License-Identifier: Apache-2.0

#include "sinyal/iso8601.hpp"

#include <cstdio>

namespace sinyal {

// Calendar conversions use Howard Hinnant's proleptic Gregorian algorithms.

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& year, unsigned& month, unsigned& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp < 10 ? mp + 3 : mp - 9;
    year = y + (month <= 2);
}

namespace {

bool is_leap(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

bool read_digits(std::string_view s, std::size_t& pos, unsigned count, std::int64_t& out) {
    if (pos + count > s.size()) return false;
    std::int64_t v = 0;
    for (unsigned i = 0; i < count; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += count;
    out = v;
    return true;
}

} // namespace

std::optional<std::int64_t> parse_utc_timestamp(std::string_view s) {
    std::size_t pos = 0;
    std::int64_t year, month, day, hour, minute, second;
    auto expect = [&](char c) {
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    };
    if (!read_digits(s, pos, 4, year) || !expect('-') ||
        !read_digits(s, pos, 2, month) || !expect('-') ||
        !read_digits(s, pos, 2, day))
        return std::nullopt;
    if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ')) return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, hour) || !expect(':') ||
        !read_digits(s, pos, 2, minute) || !expect(':') ||
        !read_digits(s, pos, 2, second))
        return std::nullopt;

    if (month < 1 || month > 12 || day < 1 ||
        day > days_in_month(year, static_cast<unsigned>(month)) ||
        hour > 23 || minute > 59 || second > 59)
        return std::nullopt;

    if (pos < s.size() && s[pos] == '.') { // fractional seconds: accept, drop
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) return std::nullopt;
    }

    std::int64_t offset_seconds = 0;
    if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
        ++pos;
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        const int sign = s[pos] == '+' ? 1 : -1;
        ++pos;
        std::int64_t oh, om;
        if (!read_digits(s, pos, 2, oh)) return std::nullopt;
        if (!expect(':')) return std::nullopt;
        if (!read_digits(s, pos, 2, om)) return std::nullopt;
        if (oh > 14 || om > 59) return std::nullopt;
        offset_seconds = sign * (oh * 3600 + om * 60);
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
}

std::string format_utc_timestamp(std::int64_t t) {
    const std::int64_t day = utc_day_of(t);
    std::int64_t sod = t - day * 86400;
    std::int64_t year;
    unsigned month, mday;
    civil_from_days(day, year, month, mday);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(year), month, mday,
                  static_cast<long long>(sod / 3600),
                  static_cast<long long>(sod / 60 % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

std::int64_t utc_day_of(std::int64_t t) {
    // floor division: UTC days are 86400 s wide, also for pre-1970 instants
    std::int64_t d = t / 86400;
    if (t % 86400 < 0) --d;
    return d;
}

std::string format_utc_date(std::int64_t day_number) {
    std::int64_t year;
    unsigned month, day;
    civil_from_days(day_number, year, month, day);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u",
                  static_cast<long long>(year), month, day);
    return buf;
}

} // namespace sinyal
