#include "plotforge/scene/path.hpp"

#include "plotforge/error.hpp"

namespace plotforge::scene {

namespace {

bool is_key_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

[[noreturn]] void bad(std::string_view text, const std::string& why)
{
    throw Error(ErrorCode::BadPath, std::string(text), why);
}

}  // namespace

PropertyPath PropertyPath::parse(std::string_view text)
{
    std::vector<Segment> out;
    std::size_t i = 0;
    if (text.empty()) {
        bad(text, "empty path");
    }
    while (i < text.size()) {
        const std::size_t start = i;
        while (i < text.size() && is_key_char(text[i])) {
            ++i;
        }
        if (i == start) {
            bad(text, "expected a field name at offset " + std::to_string(start));
        }
        out.emplace_back(std::string(text.substr(start, i - start)));
        while (i < text.size() && text[i] == '[') {
            ++i;
            const std::size_t digits = i;
            std::size_t value = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                if (i - digits >= 9) {
                    bad(text, "index too large");
                }
                value = value * 10 + static_cast<std::size_t>(text[i] - '0');
                ++i;
            }
            if (i == digits || i >= text.size() || text[i] != ']') {
                bad(text, "malformed index at offset " + std::to_string(digits - 1));
            }
            ++i;
            out.emplace_back(value);
        }
        if (i < text.size()) {
            if (text[i] != '.' || i + 1 == text.size()) {
                bad(text, "unexpected character at offset " + std::to_string(i));
            }
            ++i;
        }
    }
    return PropertyPath(std::move(out));
}

PropertyPath PropertyPath::child(std::string key) const
{
    PropertyPath p = *this;
    p.segments_.emplace_back(std::move(key));
    return p;
}

PropertyPath PropertyPath::child(std::size_t index) const
{
    PropertyPath p = *this;
    p.segments_.emplace_back(index);
    return p;
}

PropertyPath PropertyPath::prefix(std::size_t n) const
{
    return PropertyPath(std::vector<Segment>(segments_.begin(), segments_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string PropertyPath::str() const
{
    std::string s;
    for (const auto& seg : segments_) {
        if (const auto* key = std::get_if<std::string>(&seg)) {
            if (!s.empty()) {
                s += '.';
            }
            s += *key;
        } else {
            s += '[' + std::to_string(std::get<std::size_t>(seg)) + ']';
        }
    }
    return s;
}

}  // namespace plotforge::scene
