#include "plotforge/util/number_format.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace plotforge::util {

namespace {

// Locates the single conversion; returns its [begin, end) or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> find_conversion(std::string_view p)
{
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != '%') {
            continue;
        }
        if (i + 1 < p.size() && p[i + 1] == '%') {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < p.size() && (p[j] == '-' || p[j] == '+' || p[j] == ' ' || p[j] == '#' || p[j] == '0')) {
            ++j;
        }
        std::size_t digits = 0;
        while (j < p.size() && p[j] >= '0' && p[j] <= '9' && digits < 2) {
            ++j;
            ++digits;
        }
        if (j < p.size() && p[j] == '.') {
            ++j;
            digits = 0;
            while (j < p.size() && p[j] >= '0' && p[j] <= '9' && digits < 2) {
                ++j;
                ++digits;
            }
        }
        if (j >= p.size()) {
            return std::nullopt;
        }
        const char conv = p[j];
        if (conv != 'f' && conv != 'e' && conv != 'g' && conv != 'E' && conv != 'G') {
            return std::nullopt;
        }
        if (found) {
            return std::nullopt;
        }
        found = std::make_pair(i, j + 1);
        i = j;
    }
    return found;
}

}  // namespace

bool is_valid_pattern(std::string_view pattern)
{
    return find_conversion(pattern).has_value();
}

std::optional<std::string> apply_pattern(std::string_view pattern, double value)
{
    if (!find_conversion(pattern)) {
        return std::nullopt;
    }
    const std::string fmt(pattern);
    const int n = std::snprintf(nullptr, 0, fmt.c_str(), value);
    if (n < 0) {
        return std::nullopt;
    }
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    std::snprintf(buf.data(), buf.size(), fmt.c_str(), value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string fixed(double value, int decimals)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", decimals < 0 ? 0 : decimals, value);
    std::string s(buf);
    if (s[0] == '-') {
        bool all_zero = true;
        for (std::size_t i = 1; i < s.size(); ++i) {
            all_zero = all_zero && (s[i] == '0' || s[i] == '.');
        }
        if (all_zero) {
            s.erase(0, 1);
        }
    }
    return s;
}

}  // namespace plotforge::util
