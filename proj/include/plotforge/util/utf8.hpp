#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace plotforge::util {

/// Decodes UTF-8; malformed bytes become U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view text);

/// Number of code points.
std::size_t utf8_length(std::string_view text);

}  // namespace plotforge::util
