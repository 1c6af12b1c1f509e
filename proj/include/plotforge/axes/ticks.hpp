#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plotforge/scene/types.hpp"

namespace plotforge::axes {

using scene::AxisKind;
using scene::Range;
using scene::SexaMode;

struct Tick {
    double value = 0.0;
    std::string label;

    friend bool operator==(const Tick&, const Tick&) = default;
};

struct TickSet {
    std::vector<Tick> major;  // strictly increasing
    std::vector<double> minor;

    friend bool operator==(const TickSet&, const TickSet&) = default;
};

// ---------------------------------------------------------------------------
// Step ladders. Majors are the multiples of the chosen step inside the range
// (calendar-aligned for dates); the step minimizes |count - target|, ties
// going to the smaller step.

/// Inclusion slack for ladder counting and containment: 1e-9 of the span.
inline constexpr double kContainTolerance = 1e-9;

/// s * 10^k with s in {1, 2, 5}.
struct LinearStep {
    int mantissa = 1;
    int exponent = 0;

    double value() const noexcept;
    /// Exact-as-possible m * step.
    double multiple(long long m) const noexcept;
    friend bool operator==(const LinearStep&, const LinearStep&) = default;
};

long long linear_count(Range r, LinearStep step) noexcept;
LinearStep choose_linear_step(Range r, int target);

enum class DateUnit { Second, Minute, Hour, Day, Week, Month, Year };

struct DateStep {
    DateUnit unit = DateUnit::Second;
    long long count = 1;  // e.g. {Minute, 15}; Week always 1

    /// Nominal length in seconds (months 30.436875 d, years 365.2425 d).
    double nominal_seconds() const noexcept;
    friend bool operator==(const DateStep&, const DateStep&) = default;
};

/// Full date ladder in increasing order of length.
const std::vector<DateStep>& date_ladder();
/// Calendar-aligned boundaries of `step` inside r.
std::vector<double> date_boundaries(Range r, DateStep step);
long long date_count(Range r, DateStep step);
DateStep choose_date_step(Range r, int target);

/// Sexagesimal steps in base units: arcseconds (DMS) or seconds of time
/// (HMS; 1 s = 15 arcsec).
struct SexaStep {
    long long units = 1;

    friend bool operator==(const SexaStep&, const SexaStep&) = default;
};

/// Base-unit size in degrees.
double sexa_unit_degrees(SexaMode mode) noexcept;
/// Ladder entries up to (and including) the first one exceeding max_units.
std::vector<SexaStep> sexa_ladder(double max_units);
long long sexa_count(Range r, SexaStep step, SexaMode mode) noexcept;
SexaStep choose_sexa_step(Range r, int target, SexaMode mode);

// ---------------------------------------------------------------------------
// Labels

/// Fixed decimals for a linear step: max(0, -exponent).
std::string format_linear(double value, int decimals);
/// "10^k", or plain text for k in {-1, 0, 1, 2}.
std::string format_decade(int exponent);

enum class DatePrecision { Year, Month, Day, Minute, Second };
enum class DatePrefix { None, MonthDay, Full };
std::string format_date(double seconds, DatePrecision precision, DatePrefix prefix = DatePrefix::Full);

enum class SexaPrecision { Whole, Minutes, Seconds };
/// HMS: "01h30m00s"; DMS: "+12°30′00″"; truncated at `precision`.
/// `total_units` is the signed value in base units (arcsec or time seconds).
std::string format_sexagesimal(long long total_units, SexaMode mode, SexaPrecision precision);
SexaPrecision sexa_precision(SexaStep step) noexcept;

// ---------------------------------------------------------------------------
// Generators

TickSet linear_ticks(Range r, int target, std::optional<int> minor_count = std::nullopt);
TickSet log_ticks(Range r, int target, std::optional<int> minor_count = std::nullopt);
TickSet date_ticks(Range r, int target, std::optional<int> minor_count = std::nullopt);
TickSet sexagesimal_ticks(Range r, int target, SexaMode mode, std::optional<int> minor_count = std::nullopt);

/// Ticks for an axis: ladder or explicit positions, explicit labels, and the
/// label_format override (which wins over every kind's formatter).
TickSet generate_ticks(const scene::AxisTransformDef& tr, const scene::TickConfig& config);

/// Labels for arbitrary values of a kind, at the finest precision the values
/// need (used for explicit positions and click readouts).
std::string format_value(double value, const scene::AxisTransformDef& tr);

}  // namespace plotforge::axes
