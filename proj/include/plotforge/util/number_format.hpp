#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace plotforge::util {

/// A label override pattern is literal text around exactly one printf-style
/// floating conversion: %[flags][width][.precision](f|e|g|E|G). "%%" is a
/// literal percent sign.
bool is_valid_pattern(std::string_view pattern);

/// Formats value with a pattern accepted by is_valid_pattern; nullopt otherwise.
std::optional<std::string> apply_pattern(std::string_view pattern, double value);

/// Fixed-point text with the given number of decimals; never yields "-0".
std::string fixed(double value, int decimals);

}  // namespace plotforge::util
