#include "plotforge/render/surface.hpp"

#include <algorithm>
#include <cmath>

namespace plotforge::render {

PixelBox PixelBox::intersect(const PixelBox& o) const noexcept
{
    PixelBox r{std::max(x0, o.x0), std::max(y0, o.y0), std::min(x1, o.x1), std::min(y1, o.y1)};
    if (r.empty()) {
        return PixelBox{};
    }
    return r;
}

PixelBox pixel_box(const layout::Rect& r) noexcept
{
    return PixelBox{static_cast<int>(std::ceil(r.x)), static_cast<int>(std::ceil(r.y)),
                    static_cast<int>(std::floor(r.right())) + 1, static_cast<int>(std::floor(r.bottom())) + 1};
}

Surface::Surface(PixelBox box)
    : box_(box.empty() ? PixelBox{} : box),
      data_(static_cast<std::size_t>(box_.width()) * static_cast<std::size_t>(box_.height()) * 4, 0)
{
}

void Surface::fill(Rgba color)
{
    const std::uint8_t px[4] = {mul255(color.r, color.a), mul255(color.g, color.a), mul255(color.b, color.a),
                                color.a};
    for (std::size_t i = 0; i < data_.size(); i += 4) {
        std::copy(px, px + 4, &data_[i]);
    }
}

void Surface::blend(int x, int y, Rgba color, std::uint8_t coverage) noexcept
{
    if (x < box_.x0 || x >= box_.x1 || y < box_.y0 || y >= box_.y1) {
        return;
    }
    const std::uint8_t a = mul255(color.a, coverage);
    if (a == 0) {
        return;
    }
    std::uint8_t* d = at(x, y);
    const unsigned inv = 255u - a;
    d[0] = static_cast<std::uint8_t>(mul255(color.r, a) + mul255(d[0], inv));
    d[1] = static_cast<std::uint8_t>(mul255(color.g, a) + mul255(d[1], inv));
    d[2] = static_cast<std::uint8_t>(mul255(color.b, a) + mul255(d[2], inv));
    d[3] = static_cast<std::uint8_t>(a + mul255(d[3], inv));
}

void Surface::composite(const Surface& src) noexcept
{
    const PixelBox o = box_.intersect(src.box());
    for (int y = o.y0; y < o.y1; ++y) {
        const std::uint8_t* s = src.at(o.x0, y);
        std::uint8_t* d = at(o.x0, y);
        for (int x = o.x0; x < o.x1; ++x, s += 4, d += 4) {
            const unsigned sa = s[3];
            if (sa == 0) {
                continue;
            }
            if (sa == 255) {
                std::copy(s, s + 4, d);
                continue;
            }
            const unsigned inv = 255u - sa;
            for (int c = 0; c < 4; ++c) {
                d[c] = static_cast<std::uint8_t>(s[c] + mul255(d[c], inv));
            }
        }
    }
}

Raster Surface::to_raster() const
{
    Raster r(box_.x1, box_.y1);
    for (int y = box_.y0; y < box_.y1; ++y) {
        for (int x = box_.x0; x < box_.x1; ++x) {
            const std::uint8_t* s = at(x, y);
            std::uint8_t* d = r.at(x, y);
            const unsigned a = s[3];
            d[3] = static_cast<std::uint8_t>(a);
            for (int c = 0; c < 3; ++c) {
                d[c] = a == 0 ? 0 : static_cast<std::uint8_t>(std::min(255u, (s[c] * 255u + a / 2) / a));
            }
        }
    }
    return r;
}

}  // namespace plotforge::render
