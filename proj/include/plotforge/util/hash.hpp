#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <type_traits>

namespace plotforge::util {

struct Hash128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const Hash128&, const Hash128&) = default;
};

struct Hash128Hasher {
    std::size_t operator()(const Hash128& h) const noexcept { return static_cast<std::size_t>(h.lo ^ (h.hi * 31)); }
};

/// Streaming 128-bit content hash: two independent FNV-1a style lanes.
/// Stable across runs and platforms with the same endianness.
class Hasher {
public:
    void bytes(const void* data, std::size_t n) noexcept
    {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            a_ = (a_ ^ p[i]) * 0x100000001b3ULL;
            b_ = (b_ ^ p[i]) * 0x9e3779b97f4a7c15ULL;
            b_ = std::rotl(b_, 29);
        }
    }

    template <typename T>
        requires std::is_arithmetic_v<T> || std::is_enum_v<T>
    void add(T value) noexcept
    {
        if constexpr (std::is_floating_point_v<T>) {
            // canonical zero so -0.0 and 0.0 draw identically hash identically
            const double d = value == 0 ? 0.0 : static_cast<double>(value);
            bytes(&d, sizeof d);
        } else {
            bytes(&value, sizeof value);
        }
    }

    void add(std::string_view s) noexcept
    {
        add(static_cast<std::uint64_t>(s.size()));
        bytes(s.data(), s.size());
    }

    void add(std::span<const double> values) noexcept
    {
        add(static_cast<std::uint64_t>(values.size()));
        bytes(values.data(), values.size_bytes());
    }

    Hash128 digest() const noexcept
    {
        std::uint64_t x = b_ ^ (a_ >> 17);
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 31;
        return Hash128{a_, x};
    }

private:
    std::uint64_t a_ = 0xcbf29ce484222325ULL;
    std::uint64_t b_ = 0x84222325cbf29ce4ULL;
};

}  // namespace plotforge::util
