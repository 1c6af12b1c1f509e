#include "plotforge/util/calendar.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

namespace plotforge::util {

namespace {

constexpr double kSecondsPerDay = 86400.0;

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out)
{
    if (pos + len > s.size()) {
        return false;
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') {
            return false;
        }
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace

std::int64_t days_from_civil(int year, int month, int day)
{
    using namespace std::chrono;
    const sys_days d{std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(month)} /
                     std::chrono::day{static_cast<unsigned>(day)}};
    return d.time_since_epoch().count();
}

double to_epoch_seconds(const CivilTime& t)
{
    const auto days = static_cast<double>(days_from_civil(t.year, t.month, t.day));
    return days * kSecondsPerDay + t.hour * 3600.0 + t.minute * 60.0 + t.second;
}

CivilTime from_epoch_seconds(double seconds)
{
    using namespace std::chrono;
    const double day_index = std::floor(seconds / kSecondsPerDay);
    double rem = seconds - day_index * kSecondsPerDay;
    const year_month_day ymd{sys_days{days{static_cast<std::int64_t>(day_index)}}};
    CivilTime out;
    out.year = static_cast<int>(ymd.year());
    out.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    out.day = static_cast<int>(static_cast<unsigned>(ymd.day()));
    out.hour = static_cast<int>(rem / 3600.0);
    rem -= out.hour * 3600.0;
    out.minute = static_cast<int>(rem / 60.0);
    rem -= out.minute * 60.0;
    out.second = rem;
    return out;
}

std::optional<double> parse_iso8601_utc(std::string_view text)
{
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) {
        text.remove_suffix(1);
    }
    CivilTime t;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    if (!parse_int(text, 0, 4, t.year) || !parse_int(text, 5, 2, t.month) || !parse_int(text, 8, 2, t.day)) {
        return std::nullopt;
    }
    if (text.size() > 10) {
        if ((text[10] != 'T' && text[10] != ' ') || text.size() < 16 || text[13] != ':') {
            return std::nullopt;
        }
        if (!parse_int(text, 11, 2, t.hour) || !parse_int(text, 14, 2, t.minute)) {
            return std::nullopt;
        }
        if (text.size() > 16) {
            int whole = 0;
            if (text[16] != ':' || !parse_int(text, 17, 2, whole)) {
                return std::nullopt;
            }
            t.second = whole;
            if (text.size() > 19) {
                if (text[19] != '.' || text.size() == 20) {
                    return std::nullopt;
                }
                double scale = 0.1;
                for (std::size_t i = 20; i < text.size(); ++i) {
                    if (text[i] < '0' || text[i] > '9') {
                        return std::nullopt;
                    }
                    t.second += (text[i] - '0') * scale;
                    scale /= 10.0;
                }
            }
        }
    }
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{t.year}, std::chrono::month{static_cast<unsigned>(t.month)},
                             std::chrono::day{static_cast<unsigned>(t.day)}};
    if (!ymd.ok() || t.year < 1 || t.hour > 23 || t.minute > 59 || t.second >= 60.0) {
        return std::nullopt;
    }
    return to_epoch_seconds(t);
}

double min_calendar_seconds()
{
    return static_cast<double>(days_from_civil(1, 1, 1)) * kSecondsPerDay;
}

double max_calendar_seconds()
{
    return static_cast<double>(days_from_civil(9999, 12, 31)) * kSecondsPerDay;
}

}  // namespace plotforge::util
