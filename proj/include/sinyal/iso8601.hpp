// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_ISO8601_HPP
#define SINYAL_ISO8601_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sinyal {

// UTC timestamps as epoch seconds; ISO-8601 text form on the wire.

/// Parses "YYYY-MM-DDTHH:MM:SS" followed by "Z" or a "+HH:MM"/"-HH:MM"
/// offset (normalized to UTC). Fractional seconds are accepted and dropped.
/// Returns nullopt for anything malformed or out of range.
std::optional<std::int64_t> parse_utc_timestamp(std::string_view s);

/// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_utc_timestamp(std::int64_t epoch_seconds);

/// Day number since 1970-01-01 of the UTC calendar date holding the instant.
std::int64_t utc_day_of(std::int64_t epoch_seconds);

/// "YYYY-MM-DD" for a day number.
std::string format_utc_date(std::int64_t day_number);

std::int64_t days_from_civil(std::int64_t year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, std::int64_t& year, unsigned& month, unsigned& day);

} // namespace sinyal

#endif
