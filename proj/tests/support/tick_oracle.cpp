#include "tick_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace oracle {

namespace {

using namespace std::chrono;

double dec(long long j, int k)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llde%d", j, k);
    return std::strtod(buf, nullptr);
}

std::string fixed(double v, int decimals)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

long long arithmetic_count(long double lo, long double hi, long double tol, long double step)
{
    const long double n = std::floor((hi + tol) / step) - std::ceil((lo - tol) / step) + 1;
    if (n <= 0) {
        return 0;
    }
    return n > 4e18L ? 4000000000000000000LL : static_cast<long long>(n);
}

// --- dates -----------------------------------------------------------------

enum class Unit { S, Min, H, D, W, Mo, Y };

struct Rung {
    Unit unit;
    long long n;
};

std::vector<Rung> date_rungs()
{
    std::vector<Rung> r{{Unit::S, 1},   {Unit::S, 5},   {Unit::S, 15},  {Unit::S, 30},  {Unit::Min, 1},
                        {Unit::Min, 5}, {Unit::Min, 15}, {Unit::Min, 30}, {Unit::H, 1},   {Unit::H, 3},
                        {Unit::H, 6},   {Unit::H, 12},  {Unit::D, 1},   {Unit::W, 1},   {Unit::Mo, 1},
                        {Unit::Mo, 3},  {Unit::Mo, 6}};
    for (long long y : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000}) {
        r.push_back({Unit::Y, y});
    }
    return r;
}

double nominal(Rung r)
{
    switch (r.unit) {
    case Unit::S: return r.n;
    case Unit::Min: return 60.0 * r.n;
    case Unit::H: return 3600.0 * r.n;
    case Unit::D: return 86400.0 * r.n;
    case Unit::W: return 604800.0;
    case Unit::Mo: return 2629746.0 * r.n;
    case Unit::Y: return 31556952.0 * r.n;
    }
    return 1;
}

double secs(sys_days d)
{
    return static_cast<double>(d.time_since_epoch().count()) * 86400.0;
}

// Boundaries in [a, b]; nullopt when there would be more than `limit`.
std::optional<std::vector<double>> boundaries(double a, double b, Rung r, std::size_t limit)
{
    if ((b - a) / nominal(r) > static_cast<double>(limit)) {
        return std::nullopt;
    }
    std::vector<double> out;
    if (r.unit == Unit::S || r.unit == Unit::Min || r.unit == Unit::H || r.unit == Unit::D) {
        const double p = nominal(r);
        for (double v = std::ceil(a / p) * p; v <= b; v += p) {
            out.push_back(v);
        }
        return out;
    }
    sys_days d{days{static_cast<long long>(std::floor(a / 86400.0))}};
    if (r.unit == Unit::W) {
        while (weekday{d} != Monday || secs(d) < a) {
            d += days{1};
        }
        for (; secs(d) <= b; d += days{7}) {
            out.push_back(secs(d));
        }
        return out;
    }
    const year_month_day ymd{d};
    if (r.unit == Unit::Mo) {
        year_month ym = ymd.year() / ymd.month();
        while (secs(sys_days{ym / 1}) < a || (static_cast<unsigned>(ym.month()) - 1) % r.n != 0) {
            ym += months{1};
        }
        for (; secs(sys_days{ym / 1}) <= b; ym += months{r.n}) {
            out.push_back(secs(sys_days{ym / 1}));
        }
        return out;
    }
    int y = static_cast<int>(ymd.year());
    while (secs(sys_days{year{y} / 1 / 1}) < a || y % r.n != 0) {
        ++y;
    }
    for (; y <= 9999 && secs(sys_days{year{y} / 1 / 1}) <= b; y += static_cast<int>(r.n)) {
        out.push_back(secs(sys_days{year{y} / 1 / 1}));
    }
    return out;
}

std::string date_label(double v, Unit unit, long long n, int prefix)
{
    const sys_days d{days{static_cast<long long>(std::floor(v / 86400.0))}};
    const year_month_day ymd{d};
    const long long sod = static_cast<long long>(v - secs(d));
    const int y = static_cast<int>(ymd.year());
    const unsigned mo = static_cast<unsigned>(ymd.month());
    const unsigned dd = static_cast<unsigned>(ymd.day());
    char buf[64];
    if (unit == Unit::Y) {
        std::snprintf(buf, sizeof buf, "%04d", y);
        return buf;
    }
    if (unit == Unit::Mo) {
        std::snprintf(buf, sizeof buf, "%04d-%02u", y, mo);
        return buf;
    }
    if (unit == Unit::D || unit == Unit::W) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, mo, dd);
        return buf;
    }
    std::string out;
    if (prefix == 2) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u ", y, mo, dd);
        out = buf;
    } else if (prefix == 1) {
        std::snprintf(buf, sizeof buf, "%02u-%02u ", mo, dd);
        out = buf;
    }
    const bool with_seconds = unit == Unit::S;
    (void)n;
    if (with_seconds) {
        std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", sod / 3600, (sod / 60) % 60, sod % 60);
    } else {
        std::snprintf(buf, sizeof buf, "%02lld:%02lld", sod / 3600, (sod / 60) % 60);
    }
    return out + buf;
}

std::string sexa_label(long long units, bool hms, int precision)
{
    const long long a = std::llabs(units);
    char buf[96];
    const long long w = a / 3600;
    const long long m = (a / 60) % 60;
    const long long s = a % 60;
    std::string sign = hms ? (units < 0 ? "-" : "") : (units < 0 ? "-" : "+");
    if (hms) {
        if (precision == 0) {
            std::snprintf(buf, sizeof buf, "%02lldh", w);
        } else if (precision == 1) {
            std::snprintf(buf, sizeof buf, "%02lldh%02lldm", w, m);
        } else {
            std::snprintf(buf, sizeof buf, "%02lldh%02lldm%02llds", w, m, s);
        }
    } else {
        if (precision == 0) {
            std::snprintf(buf, sizeof buf, "%02lld°", w);
        } else if (precision == 1) {
            std::snprintf(buf, sizeof buf, "%02lld°%02lld′", w, m);
        } else {
            std::snprintf(buf, sizeof buf, "%02lld°%02lld′%02lld″", w, m, s);
        }
    }
    return sign + buf;
}

}  // namespace

Ticks linear(double lo, double hi, int target)
{
    const double tol = 1e-9 * (hi - lo);
    const int e = static_cast<int>(std::floor(std::log10(hi - lo)));
    long long best_err = -1;
    int best_s = 1;
    int best_k = 0;
    for (int k = e - 15; k <= e + 2; ++k) {
        for (int s : {1, 2, 5}) {
            const long long n = arithmetic_count(lo, hi, tol, static_cast<long double>(dec(s, k)));
            const long long err = std::llabs(n - target);
            if (best_err < 0 || err < best_err) {
                best_err = err;
                best_s = s;
                best_k = k;
            }
        }
    }
    const double step = dec(best_s, best_k);
    Ticks out;
    for (long long m = static_cast<long long>(std::ceil((lo - tol) / step));
         m <= static_cast<long long>(std::floor((hi + tol) / step)); ++m) {
        const double v = dec(m * best_s, best_k);
        out.values.push_back(v);
        out.labels.push_back(fixed(v, best_k < 0 ? -best_k : 0));
    }
    return out;
}

Ticks log(double lo, double hi, int target)
{
    const double tol = 1e-9 * (std::log10(hi) - std::log10(lo));
    std::vector<int> inside;
    for (int k = -330; k <= 310; ++k) {
        const double v = std::log10(dec(1, k));
        if (v >= std::log10(lo) - tol && v <= std::log10(hi) + tol) {
            inside.push_back(k);
        }
    }
    if (inside.size() < 2) {
        return linear(lo, hi, target);
    }
    int every = 1;
    while (true) {
        int count = 0;
        for (int k : inside) {
            count += ((k % every) + every) % every == 0;
        }
        if (count <= 1.5 * target) {
            break;
        }
        ++every;
    }
    Ticks out;
    for (int k : inside) {
        if (((k % every) + every) % every != 0) {
            continue;
        }
        out.values.push_back(dec(1, k));
        if (k >= -1 && k <= 2) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%g", dec(1, k));
            out.labels.push_back(buf);
        } else {
            out.labels.push_back("10^" + std::to_string(k));
        }
    }
    return out;
}

Ticks date(double lo, double hi, int target)
{
    const double tol = 1e-9 * (hi - lo);
    std::optional<Rung> best;
    long long best_err = -1;
    std::vector<double> best_values;
    for (const Rung r : date_rungs()) {
        const auto b = boundaries(lo - tol, hi + tol, r, 200000);
        const long long n = b ? static_cast<long long>(b->size()) : 200001;
        const long long err = std::llabs(n - target);
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = r;
            best_values = b ? *b : std::vector<double>{};
        }
    }
    Ticks out;
    out.values = best_values;
    int prefix = 0;
    if (!best_values.empty()) {
        const year_month_day a{sys_days{days{static_cast<long long>(std::floor(best_values.front() / 86400.0))}}};
        const year_month_day z{sys_days{days{static_cast<long long>(std::floor(best_values.back() / 86400.0))}}};
        prefix = a.year() != z.year() ? 2 : (a != z ? 1 : 0);
    }
    for (double v : best_values) {
        out.labels.push_back(date_label(v, best->unit, best->n, prefix));
    }
    return out;
}

Ticks sexagesimal(double lo, double hi, int target, bool hms)
{
    const double per_degree = hms ? 240.0 : 3600.0;
    const long double a = static_cast<long double>(lo / (1.0 / per_degree));
    const long double b = static_cast<long double>(hi / (1.0 / per_degree));
    const long double tol = 1e-9L * (b - a);
    std::vector<long long> ladder;
    for (long long base : {1, 60}) {
        for (long long s : {1, 2, 5, 10, 15, 20, 30}) {
            ladder.push_back(s * base);
        }
    }
    for (long long scale = 3600; scale < 1000000000000000LL; scale *= 10) {
        for (long long s : {1, 2, 5}) {
            ladder.push_back(s * scale);
        }
    }
    long long best = ladder.front();
    long long best_err = -1;
    for (long long p : ladder) {
        const long long err = std::llabs(arithmetic_count(a, b, tol, static_cast<long double>(p)) - target);
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = p;
        }
    }
    const int precision = best % 3600 == 0 ? 0 : (best % 60 == 0 ? 1 : 2);
    Ticks out;
    const double lo_u = lo / (1.0 / per_degree);
    const double hi_u = hi / (1.0 / per_degree);
    const double t = 1e-9 * (hi_u - lo_u);
    for (long long m = static_cast<long long>(std::ceil((lo_u - t) / static_cast<double>(best)));
         m <= static_cast<long long>(std::floor((hi_u + t) / static_cast<double>(best))); ++m) {
        out.values.push_back(static_cast<double>(m * best) / per_degree);
        out.labels.push_back(sexa_label(m * best, hms, precision));
    }
    return out;
}

}  // namespace oracle
