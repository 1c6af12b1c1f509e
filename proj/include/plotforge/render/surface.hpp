#pragma once

#include <cstdint>
#include <vector>

#include "plotforge/layout/layout.hpp"
#include "plotforge/scene/types.hpp"

namespace plotforge::render {

using scene::Rgba;

/// Straight (non-premultiplied) RGBA8, row-major, top row first.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Raster() = default;
    Raster(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 4, 0) {}

    const std::uint8_t* at(int x, int y) const { return &pixels[(static_cast<std::size_t>(y) * width + x) * 4]; }
    std::uint8_t* at(int x, int y) { return &pixels[(static_cast<std::size_t>(y) * width + x) * 4]; }

    friend bool operator==(const Raster&, const Raster&) = default;
};

/// Half-open integer pixel box [x0, x1) x [y0, y1).
struct PixelBox {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool empty() const noexcept { return x1 <= x0 || y1 <= y0; }
    int width() const noexcept { return x1 - x0; }
    int height() const noexcept { return y1 - y0; }
    PixelBox intersect(const PixelBox& o) const noexcept;

    friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

/// Pixels whose centers lie inside a layout rect (centers sit on integers).
PixelBox pixel_box(const layout::Rect& r) noexcept;

/// (a * b) / 255 rounded to nearest.
inline std::uint8_t mul255(unsigned a, unsigned b) noexcept
{
    const unsigned t = a * b + 128;
    return static_cast<std::uint8_t>((t + (t >> 8)) >> 8);
}

/// Premultiplied RGBA8 buffer covering a box in absolute device pixels.
class Surface {
public:
    Surface() = default;
    explicit Surface(PixelBox box);

    const PixelBox& box() const noexcept { return box_; }
    std::uint8_t* at(int x, int y) noexcept
    {
        return &data_[(static_cast<std::size_t>(y - box_.y0) * box_.width() + (x - box_.x0)) * 4];
    }
    const std::uint8_t* at(int x, int y) const noexcept
    {
        return &data_[(static_cast<std::size_t>(y - box_.y0) * box_.width() + (x - box_.x0)) * 4];
    }
    const std::vector<std::uint8_t>& data() const noexcept { return data_; }

    void fill(Rgba color);
    /// Source-over of `color` scaled by coverage (0..255).
    void blend(int x, int y, Rgba color, std::uint8_t coverage) noexcept;
    /// Source-over of another premultiplied surface on the overlap.
    void composite(const Surface& src) noexcept;
    /// Unpremultiplied copy; the box must start at the origin.
    Raster to_raster() const;

    std::size_t byte_size() const noexcept { return data_.size(); }

private:
    PixelBox box_;
    std::vector<std::uint8_t> data_;
};

}  // namespace plotforge::render
