#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// UTC-only civil time helpers (proleptic Gregorian, no leap seconds).
namespace plotforge::util {

struct CivilTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

/// Seconds since 1970-01-01T00:00:00Z for the given civil time.
double to_epoch_seconds(const CivilTime& t);
CivilTime from_epoch_seconds(double seconds);

/// Days since epoch of the first day of the given month.
std::int64_t days_from_civil(int year, int month, int day);

/// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM", "YYYY-MM-DDTHH:MM:SS(.fff)" with
/// optional trailing 'Z'. Returns nullopt on anything else.
std::optional<double> parse_iso8601_utc(std::string_view text);

/// Smallest and largest supported instants (years 1..9999).
double min_calendar_seconds();
double max_calendar_seconds();

}  // namespace plotforge::util
