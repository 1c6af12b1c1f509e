#include "plotforge/axes/ticks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>

#include "plotforge/util/calendar.hpp"
#include "plotforge/util/number_format.hpp"

namespace plotforge::axes {

namespace {

constexpr double kDay = 86400.0;
constexpr double kWeekOffset = 4.0 * kDay;  // 1970-01-05 was a Monday

double pow10_exact(int k)
{
    static const double table[] = {1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
                                   1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};
    if (k >= 0 && k <= 22) {
        return table[k];
    }
    return std::pow(10.0, k);
}

// Nearest double to the decimal j * 10^k.
double decimal(long long j, int k)
{
    if (k >= 0 && k <= 22 && std::llabs(j) < (1LL << 53)) {
        return static_cast<double>(j) * pow10_exact(k);
    }
    if (k < 0 && k >= -22 && std::llabs(j) < (1LL << 53)) {
        return static_cast<double>(j) / pow10_exact(-k);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llde%d", j, k);
    return std::strtod(buf, nullptr);
}

double tolerance(Range r)
{
    return kContainTolerance * (r.hi - r.lo);
}

// Number of integers m with m * p in [lo - tol, hi + tol], p > 0, saturated.
long long multiples_in(double lo, double hi, double tol, double p, double offset = 0.0)
{
    const double a = std::ceil((lo - tol - offset) / p);
    const double b = std::floor((hi + tol - offset) / p);
    const double n = b - a + 1.0;
    if (!(n > 0.0)) {
        return 0;
    }
    return n > 4e18 ? static_cast<long long>(4e18) : static_cast<long long>(n);
}

bool inside(double v, Range r, double tol)
{
    return v >= r.lo - tol && v <= r.hi + tol;
}

// Minors between consecutive majors, n per interval, uniform in data space.
std::vector<double> uniform_minors(const std::vector<Tick>& major, int n)
{
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < major.size() && n > 0; ++i) {
        const double a = major[i].value;
        const double b = major[i + 1].value;
        for (int j = 1; j <= n; ++j) {
            out.push_back(a + (b - a) * j / (n + 1));
        }
    }
    return out;
}

int auto_minor_count(int mantissa)
{
    return mantissa == 2 ? 3 : 4;
}

// ---------------------------------------------------------------------------
// dates

struct MonthIndex {
    static long long of(int year, int month) { return static_cast<long long>(year) * 12 + (month - 1); }
    static double start(long long index)
    {
        const int year = static_cast<int>(index / 12);
        const int month = static_cast<int>(index % 12) + 1;
        return static_cast<double>(util::days_from_civil(year, month, 1)) * kDay;
    }
};

double fixed_period(DateStep s)
{
    switch (s.unit) {
    case DateUnit::Second: return static_cast<double>(s.count);
    case DateUnit::Minute: return 60.0 * static_cast<double>(s.count);
    case DateUnit::Hour: return 3600.0 * static_cast<double>(s.count);
    case DateUnit::Day: return kDay * static_cast<double>(s.count);
    case DateUnit::Week: return 7.0 * kDay;
    default: return 0.0;
    }
}

// First and last calendar index (months or years) whose start lies in
// [lo - tol, hi + tol], aligned to multiples of n.
std::pair<long long, long long> calendar_span(Range r, double tol, bool years, long long n)
{
    const double lo = std::max(r.lo - tol, util::min_calendar_seconds());
    const double hi = std::min(r.hi + tol, util::max_calendar_seconds() + 366.0 * kDay);
    if (hi < lo) {
        return {1, 0};
    }
    const util::CivilTime a = util::from_epoch_seconds(lo);
    const util::CivilTime b = util::from_epoch_seconds(hi);
    auto start = [&](long long idx) {
        return years ? static_cast<double>(util::days_from_civil(static_cast<int>(idx), 1, 1)) * kDay
                     : MonthIndex::start(idx);
    };
    long long first = years ? a.year : MonthIndex::of(a.year, a.month);
    if (start(first) < lo) {
        ++first;
    }
    long long last = years ? b.year : MonthIndex::of(b.year, b.month);
    if (years) {
        last = std::min<long long>(last, 9999);
    }
    // round first up / last down to multiples of n
    first = ((first + n - 1) / n) * n;
    last = (last / n) * n;
    return {first, last};
}

DatePrecision date_precision(DateStep s)
{
    switch (s.unit) {
    case DateUnit::Second: return DatePrecision::Second;
    case DateUnit::Minute:
    case DateUnit::Hour: return DatePrecision::Minute;
    case DateUnit::Day:
    case DateUnit::Week: return DatePrecision::Day;
    case DateUnit::Month: return DatePrecision::Month;
    case DateUnit::Year: return DatePrecision::Year;
    }
    return DatePrecision::Second;
}

DatePrefix date_prefix(const std::vector<double>& values)
{
    if (values.empty()) {
        return DatePrefix::None;
    }
    const util::CivilTime first = util::from_epoch_seconds(values.front());
    const util::CivilTime last = util::from_epoch_seconds(values.back());
    if (first.year != last.year) {
        return DatePrefix::Full;
    }
    if (first.month != last.month || first.day != last.day) {
        return DatePrefix::MonthDay;
    }
    return DatePrefix::None;
}

std::optional<DateStep> date_minor_step(DateStep s)
{
    using U = DateUnit;
    switch (s.unit) {
    case U::Second:
        if (s.count == 1) {
            return std::nullopt;
        }
        return DateStep{U::Second, s.count == 5 ? 1 : 5};
    case U::Minute:
        if (s.count == 1) {
            return DateStep{U::Second, 15};
        }
        return DateStep{U::Minute, s.count == 5 ? 1 : 5};
    case U::Hour:
        if (s.count == 1) {
            return DateStep{U::Minute, 15};
        }
        return DateStep{U::Hour, s.count == 12 ? 3 : 1};
    case U::Day: return DateStep{U::Hour, 6};
    case U::Week: return DateStep{U::Day, 1};
    case U::Month:
        if (s.count == 1) {
            return DateStep{U::Week, 1};
        }
        return DateStep{U::Month, 1};
    case U::Year:
        if (s.count == 1) {
            return DateStep{U::Month, 3};
        }
        if (s.count == 2 || s.count == 5) {
            return DateStep{U::Year, 1};
        }
        {
            long long mant = s.count;
            long long scale = 1;
            while (mant % 10 == 0) {
                mant /= 10;
                scale *= 10;
            }
            return DateStep{U::Year, mant == 2 ? scale / 2 : mant * scale / 5};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// sexagesimal

std::optional<long long> sexa_minor_units(long long p)
{
    switch (p) {
    case 1: return std::nullopt;
    case 2:
    case 5: return 1;
    case 10: return 2;
    case 15:
    case 20: return 5;
    case 30: return 10;
    case 60: return 10;
    case 120: return 30;
    case 300: return 60;
    case 600: return 120;
    case 900:
    case 1200: return 300;
    case 1800: return 600;
    case 3600: return 600;
    case 7200: return 1800;
    case 18000: return 3600;
    default: break;
    }
    long long mant = p / 3600;
    long long scale = 3600;
    while (mant % 10 == 0) {
        mant /= 10;
        scale *= 10;
    }
    return mant == 2 ? 2 * scale / 4 : mant * scale / 5;
}

std::string two_digits(long long v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02lld", v);
    return buf;
}

int minimal_decimals(const std::vector<double>& values)
{
    for (int d = 0; d <= 12; ++d) {
        bool ok = true;
        for (double v : values) {
            const double back = std::strtod(util::fixed(v, d).c_str(), nullptr);
            ok = ok && std::abs(back - v) <= 1e-9 * std::max(1.0, std::abs(v));
        }
        if (ok) {
            return d;
        }
    }
    return 12;
}

long long sexa_units_of(double degrees, SexaMode mode)
{
    return std::llround(degrees / sexa_unit_degrees(mode));
}

std::vector<std::string> explicit_labels_for(const std::vector<double>& values, const scene::AxisTransformDef& tr)
{
    std::vector<std::string> out;
    switch (tr.kind) {
    case AxisKind::Linear: {
        const int d = minimal_decimals(values);
        for (double v : values) {
            out.push_back(format_linear(v, d));
        }
        break;
    }
    case AxisKind::Log: {
        for (double v : values) {
            const int k = static_cast<int>(std::lround(std::log10(v)));
            if (v == decimal(1, k)) {
                out.push_back(format_decade(k));
            } else {
                out.push_back(format_linear(v, minimal_decimals({v})));
            }
        }
        break;
    }
    case AxisKind::Date: {
        DatePrecision p = DatePrecision::Year;
        for (double v : values) {
            const util::CivilTime c = util::from_epoch_seconds(std::round(v));
            DatePrecision need = DatePrecision::Year;
            if (c.second != 0.0) {
                need = DatePrecision::Second;
            } else if (c.hour != 0 || c.minute != 0) {
                need = DatePrecision::Minute;
            } else if (c.day != 1) {
                need = DatePrecision::Day;
            } else if (c.month != 1) {
                need = DatePrecision::Month;
            }
            p = std::max(p, need);
        }
        for (double v : values) {
            out.push_back(format_date(v, p, DatePrefix::Full));
        }
        break;
    }
    case AxisKind::Sexagesimal: {
        SexaPrecision p = SexaPrecision::Whole;
        for (double v : values) {
            const long long u = std::llabs(sexa_units_of(v, tr.sexa_mode));
            if (u % 60 != 0) {
                p = SexaPrecision::Seconds;
            } else if (u % 3600 != 0) {
                p = std::max(p, SexaPrecision::Minutes);
            }
        }
        for (double v : values) {
            out.push_back(format_sexagesimal(sexa_units_of(v, tr.sexa_mode), tr.sexa_mode, p));
        }
        break;
    }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// linear

double LinearStep::value() const noexcept
{
    return decimal(mantissa, exponent);
}

double LinearStep::multiple(long long m) const noexcept
{
    return decimal(m * mantissa, exponent);
}

long long linear_count(Range r, LinearStep step) noexcept
{
    return multiples_in(r.lo, r.hi, tolerance(r), step.value());
}

LinearStep choose_linear_step(Range r, int target)
{
    const int k0 = static_cast<int>(std::floor(std::log10((r.hi - r.lo) / target)));
    LinearStep best;
    long long best_err = std::numeric_limits<long long>::max();
    for (int k = k0 - 1; k <= k0 + 1; ++k) {
        for (int s : {1, 2, 5}) {
            const LinearStep step{s, k};
            const long long err = std::llabs(linear_count(r, step) - target);
            if (err < best_err) {
                best_err = err;
                best = step;
            }
        }
    }
    return best;
}

TickSet linear_ticks(Range r, int target, std::optional<int> minor_count)
{
    const LinearStep step = choose_linear_step(r, target);
    const double tol = tolerance(r);
    const double v = step.value();
    const auto m0 = static_cast<long long>(std::ceil((r.lo - tol) / v));
    const auto m1 = static_cast<long long>(std::floor((r.hi + tol) / v));
    const int decimals = std::max(0, -step.exponent);
    TickSet out;
    for (long long m = m0; m <= m1; ++m) {
        const double value = step.multiple(m);
        out.major.push_back(Tick{value, format_linear(value, decimals)});
    }
    const int n = minor_count.value_or(auto_minor_count(step.mantissa));
    if (n > 0) {
        const long long d = n + 1;
        const auto j0 = static_cast<long long>(std::ceil((r.lo - tol) * d / v));
        const auto j1 = static_cast<long long>(std::floor((r.hi + tol) * d / v));
        if (j1 - j0 < 100000) {
            for (long long j = j0; j <= j1; ++j) {
                if (j % d != 0) {
                    const double value = step.exponent < 0
                                             ? static_cast<double>(j * step.mantissa) /
                                                   (pow10_exact(-step.exponent) * static_cast<double>(d))
                                             : static_cast<double>(j * step.mantissa) *
                                                   pow10_exact(step.exponent) / static_cast<double>(d);
                    out.minor.push_back(value);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// log

// Log containment uses a tolerance in decades, which implies the linear one.
bool inside_log(double v, Range r)
{
    const double l0 = std::log10(r.lo);
    const double l1 = std::log10(r.hi);
    const double lv = std::log10(v);
    const double tol = kContainTolerance * (l1 - l0);
    return lv >= l0 - tol && lv <= l1 + tol;
}

TickSet log_ticks(Range r, int target, std::optional<int> minor_count)
{
    const int k_lo = static_cast<int>(std::floor(std::log10(r.lo))) - 1;
    const int k_hi = static_cast<int>(std::ceil(std::log10(r.hi))) + 1;
    std::vector<int> decades;
    for (int k = k_lo; k <= k_hi; ++k) {
        if (inside_log(decimal(1, k), r)) {
            decades.push_back(k);
        }
    }
    if (decades.size() < 2) {
        return linear_ticks(r, target, minor_count);
    }
    const double limit = 1.5 * target;
    int m = 1;
    auto count_every = [&](int every) {
        return std::count_if(decades.begin(), decades.end(),
                             [&](int k) { return ((k % every) + every) % every == 0; });
    };
    while (static_cast<double>(count_every(m)) > limit) {
        ++m;
    }
    TickSet out;
    std::vector<int> skipped;
    for (int k : decades) {
        if (((k % m) + m) % m == 0) {
            out.major.push_back(Tick{decimal(1, k), format_decade(k)});
        } else {
            skipped.push_back(k);
        }
    }
    if (minor_count) {
        out.minor = uniform_minors(out.major, *minor_count);
        return out;
    }
    std::set<double> minors;
    for (int k : skipped) {
        minors.insert(decimal(1, k));
    }
    if (std::log10(r.hi / r.lo) <= 3.0 + 1e-12) {
        for (int k = k_lo; k <= k_hi; ++k) {
            for (int j = 2; j <= 9; ++j) {
                const double v = decimal(j, k);
                if (inside_log(v, r)) {
                    minors.insert(v);
                }
            }
        }
    }
    out.minor.assign(minors.begin(), minors.end());
    return out;
}

std::string format_linear(double value, int decimals)
{
    return util::fixed(value, decimals);
}

std::string format_decade(int exponent)
{
    switch (exponent) {
    case -1: return "0.1";
    case 0: return "1";
    case 1: return "10";
    case 2: return "100";
    default: return "10^" + std::to_string(exponent);
    }
}

// ---------------------------------------------------------------------------
// date

double DateStep::nominal_seconds() const noexcept
{
    switch (unit) {
    case DateUnit::Month: return 30.436875 * kDay * static_cast<double>(count);
    case DateUnit::Year: return 365.2425 * kDay * static_cast<double>(count);
    default: return fixed_period(*this);
    }
}

const std::vector<DateStep>& date_ladder()
{
    static const std::vector<DateStep> ladder = [] {
        using U = DateUnit;
        std::vector<DateStep> l{{U::Second, 1}, {U::Second, 5}, {U::Second, 15}, {U::Second, 30},
                                {U::Minute, 1}, {U::Minute, 5}, {U::Minute, 15}, {U::Minute, 30},
                                {U::Hour, 1},   {U::Hour, 3},   {U::Hour, 6},    {U::Hour, 12},
                                {U::Day, 1},    {U::Week, 1},   {U::Month, 1},   {U::Month, 3},
                                {U::Month, 6}};
        for (long long scale = 1; scale <= 1000; scale *= 10) {
            for (long long s : {1, 2, 5}) {
                l.push_back({U::Year, s * scale});
            }
        }
        return l;
    }();
    return ladder;
}

std::vector<double> date_boundaries(Range r, DateStep step)
{
    const double tol = tolerance(r);
    std::vector<double> out;
    if (step.unit == DateUnit::Month || step.unit == DateUnit::Year) {
        const bool years = step.unit == DateUnit::Year;
        const auto [first, last] = calendar_span(r, tol, years, step.count);
        for (long long i = first; i <= last; i += step.count) {
            out.push_back(years ? static_cast<double>(util::days_from_civil(static_cast<int>(i), 1, 1)) * kDay
                                : MonthIndex::start(i));
        }
        return out;
    }
    const double p = fixed_period(step);
    const double offset = step.unit == DateUnit::Week ? kWeekOffset : 0.0;
    const double a = std::ceil((r.lo - tol - offset) / p);
    const double b = std::floor((r.hi + tol - offset) / p);
    for (double m = a; m <= b; m += 1.0) {
        out.push_back(offset + m * p);
    }
    return out;
}

long long date_count(Range r, DateStep step)
{
    const double tol = tolerance(r);
    if (step.unit == DateUnit::Month || step.unit == DateUnit::Year) {
        const auto [first, last] = calendar_span(r, tol, step.unit == DateUnit::Year, step.count);
        return last < first ? 0 : (last - first) / step.count + 1;
    }
    const double offset = step.unit == DateUnit::Week ? kWeekOffset : 0.0;
    return multiples_in(r.lo, r.hi, tol, fixed_period(step), offset);
}

DateStep choose_date_step(Range r, int target)
{
    const auto& ladder = date_ladder();
    const double raw = (r.hi - r.lo) / target;
    std::size_t i = 0;
    while (i + 1 < ladder.size() && ladder[i].nominal_seconds() < raw) {
        ++i;
    }
    const std::size_t lo = i >= 3 ? i - 3 : 0;
    const std::size_t hi = std::min(ladder.size() - 1, i + 3);
    DateStep best = ladder[lo];
    long long best_err = std::numeric_limits<long long>::max();
    for (std::size_t j = lo; j <= hi; ++j) {
        const long long err = std::llabs(date_count(r, ladder[j]) - target);
        if (err < best_err) {
            best_err = err;
            best = ladder[j];
        }
    }
    return best;
}

std::string format_date(double seconds, DatePrecision precision, DatePrefix prefix)
{
    const util::CivilTime c = util::from_epoch_seconds(std::round(seconds));
    char buf[64];
    switch (precision) {
    case DatePrecision::Year: std::snprintf(buf, sizeof buf, "%04d", c.year); return buf;
    case DatePrecision::Month: std::snprintf(buf, sizeof buf, "%04d-%02d", c.year, c.month); return buf;
    case DatePrecision::Day: std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", c.year, c.month, c.day); return buf;
    default: break;
    }
    std::string out;
    if (prefix == DatePrefix::Full) {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d ", c.year, c.month, c.day);
        out = buf;
    } else if (prefix == DatePrefix::MonthDay) {
        std::snprintf(buf, sizeof buf, "%02d-%02d ", c.month, c.day);
        out = buf;
    }
    if (precision == DatePrecision::Minute) {
        std::snprintf(buf, sizeof buf, "%02d:%02d", c.hour, c.minute);
    } else {
        std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", c.hour, c.minute, static_cast<int>(c.second));
    }
    return out + buf;
}

TickSet date_ticks(Range r, int target, std::optional<int> minor_count)
{
    const DateStep step = choose_date_step(r, target);
    const std::vector<double> majors = date_boundaries(r, step);
    const DatePrecision precision = date_precision(step);
    const DatePrefix prefix = precision >= DatePrecision::Minute ? date_prefix(majors) : DatePrefix::None;
    TickSet out;
    for (double v : majors) {
        out.major.push_back(Tick{v, format_date(v, precision, prefix)});
    }
    if (minor_count) {
        out.minor = uniform_minors(out.major, *minor_count);
        return out;
    }
    if (const auto minor = date_minor_step(step); minor && date_count(r, *minor) < 100000) {
        const std::set<double> taken(majors.begin(), majors.end());
        for (double v : date_boundaries(r, *minor)) {
            if (!taken.contains(v)) {
                out.minor.push_back(v);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// sexagesimal

double sexa_unit_degrees(SexaMode mode) noexcept
{
    return mode == SexaMode::Dms ? 1.0 / 3600.0 : 1.0 / 240.0;
}

std::vector<SexaStep> sexa_ladder(double max_units)
{
    std::vector<SexaStep> out;
    for (long long base : {1LL, 60LL}) {
        for (long long s : {1, 2, 5, 10, 15, 20, 30}) {
            out.push_back({s * base});
            if (static_cast<double>(s * base) > max_units) {
                return out;
            }
        }
    }
    for (long long scale = 3600; scale < (1LL << 56); scale *= 10) {
        for (long long s : {1, 2, 5}) {
            out.push_back({s * scale});
            if (static_cast<double>(s * scale) > max_units) {
                return out;
            }
        }
    }
    return out;
}

long long sexa_count(Range r, SexaStep step, SexaMode mode) noexcept
{
    const double unit = sexa_unit_degrees(mode);
    const double lo = r.lo / unit;
    const double hi = r.hi / unit;
    return multiples_in(lo, hi, kContainTolerance * (hi - lo), static_cast<double>(step.units));
}

SexaStep choose_sexa_step(Range r, int target, SexaMode mode)
{
    const double span_units = (r.hi - r.lo) / sexa_unit_degrees(mode);
    const double raw = span_units / target;
    const std::vector<SexaStep> ladder = sexa_ladder(raw);
    const std::size_t i = ladder.size() - 1;  // first entry exceeding raw (or the last)
    const std::vector<SexaStep> wider = sexa_ladder(static_cast<double>(ladder[i].units) * 1000.0);
    const std::size_t lo = i >= 3 ? i - 3 : 0;
    const std::size_t hi = std::min(wider.size() - 1, i + 3);
    SexaStep best = wider[lo];
    long long best_err = std::numeric_limits<long long>::max();
    for (std::size_t j = lo; j <= hi; ++j) {
        const long long err = std::llabs(sexa_count(r, wider[j], mode) - target);
        if (err < best_err) {
            best_err = err;
            best = wider[j];
        }
    }
    return best;
}

SexaPrecision sexa_precision(SexaStep step) noexcept
{
    if (step.units % 3600 == 0) {
        return SexaPrecision::Whole;
    }
    if (step.units % 60 == 0) {
        return SexaPrecision::Minutes;
    }
    return SexaPrecision::Seconds;
}

std::string format_sexagesimal(long long total_units, SexaMode mode, SexaPrecision precision)
{
    const bool negative = total_units < 0;
    const long long a = std::llabs(total_units);
    const long long whole = a / 3600;
    const long long minutes = (a / 60) % 60;
    const long long seconds = a % 60;
    std::string out;
    if (mode == SexaMode::Dms) {
        out = negative ? "-" : "+";
        out += two_digits(whole) + "°";
        if (precision >= SexaPrecision::Minutes) {
            out += two_digits(minutes) + "′";
        }
        if (precision == SexaPrecision::Seconds) {
            out += two_digits(seconds) + "″";
        }
        return out;
    }
    out = negative ? "-" : "";
    out += two_digits(whole) + "h";
    if (precision >= SexaPrecision::Minutes) {
        out += two_digits(minutes) + "m";
    }
    if (precision == SexaPrecision::Seconds) {
        out += two_digits(seconds) + "s";
    }
    return out;
}

TickSet sexagesimal_ticks(Range r, int target, SexaMode mode, std::optional<int> minor_count)
{
    const SexaStep step = choose_sexa_step(r, target, mode);
    const double unit = sexa_unit_degrees(mode);
    const double per_degree = mode == SexaMode::Dms ? 3600.0 : 240.0;
    const double lo = r.lo / unit;
    const double hi = r.hi / unit;
    const double tol = kContainTolerance * (hi - lo);
    const double p = static_cast<double>(step.units);
    const auto m0 = static_cast<long long>(std::ceil((lo - tol) / p));
    const auto m1 = static_cast<long long>(std::floor((hi + tol) / p));
    const SexaPrecision precision = sexa_precision(step);
    TickSet out;
    for (long long m = m0; m <= m1; ++m) {
        const long long units = m * step.units;
        out.major.push_back(Tick{static_cast<double>(units) / per_degree, format_sexagesimal(units, mode, precision)});
    }
    if (minor_count) {
        out.minor = uniform_minors(out.major, *minor_count);
        return out;
    }
    if (const auto q = sexa_minor_units(step.units)) {
        const double qd = static_cast<double>(*q);
        const auto j0 = static_cast<long long>(std::ceil((lo - tol) / qd));
        const auto j1 = static_cast<long long>(std::floor((hi + tol) / qd));
        if (j1 - j0 < 100000) {
            for (long long j = j0; j <= j1; ++j) {
                const long long units = j * *q;
                if (units % step.units != 0) {
                    out.minor.push_back(static_cast<double>(units) / per_degree);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

TickSet generate_ticks(const scene::AxisTransformDef& tr, const scene::TickConfig& config)
{
    TickSet out;
    if (const int* target = std::get_if<int>(&config.major)) {
        switch (tr.kind) {
        case AxisKind::Linear: out = linear_ticks(tr.range, *target, config.minor_count); break;
        case AxisKind::Log: out = log_ticks(tr.range, *target, config.minor_count); break;
        case AxisKind::Date: out = date_ticks(tr.range, *target, config.minor_count); break;
        case AxisKind::Sexagesimal:
            out = sexagesimal_ticks(tr.range, *target, tr.sexa_mode, config.minor_count);
            break;
        }
    } else {
        const auto& positions = std::get<std::vector<double>>(config.major);
        const double tol = tolerance(tr.range);
        std::vector<double> kept;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (inside(positions[i], tr.range, tol)) {
                kept.push_back(positions[i]);
                if (config.explicit_labels) {
                    labels.push_back((*config.explicit_labels)[i]);
                }
            }
        }
        if (!config.explicit_labels) {
            labels = explicit_labels_for(kept, tr);
        }
        for (std::size_t i = 0; i < kept.size(); ++i) {
            out.major.push_back(Tick{kept[i], labels[i]});
        }
        if (config.minor_count) {
            out.minor = uniform_minors(out.major, *config.minor_count);
        }
    }
    if (config.label_format) {
        for (auto& tick : out.major) {
            tick.label = util::apply_pattern(*config.label_format, tick.value).value_or(tick.label);
        }
    }
    return out;
}

std::string format_value(double value, const scene::AxisTransformDef& tr)
{
    char buf[64];
    switch (tr.kind) {
    case AxisKind::Date:
        if (value < util::min_calendar_seconds() || value > util::max_calendar_seconds()) {
            break;
        }
        return format_date(value, DatePrecision::Second, DatePrefix::Full);
    case AxisKind::Sexagesimal:
        if (std::abs(value) > 1e12) {
            break;
        }
        return format_sexagesimal(sexa_units_of(value, tr.sexa_mode), tr.sexa_mode, SexaPrecision::Seconds);
    default: break;
    }
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

}  // namespace plotforge::axes
