#pragma once

#include "plotforge/render/drawlist.hpp"
#include "plotforge/render/surface.hpp"

namespace plotforge::render {

/// Antialiased with 1-px coverage: a pixel at distance d from the
/// centerline of a stroke of width w gets clamp(w/2 + 0.5 - d, 0, 1).
/// Overlapping parts of one primitive take the maximum coverage.
void draw_primitive(Surface& surface, const Primitive& prim, const PixelBox& clip);

/// Draws a group's primitives in order, clipped to its clip rect.
void draw_group(Surface& surface, const DrawGroup& group);

/// Rasterizes one group onto a transparent surface covering its clip box.
Surface rasterize_group(const DrawGroup& group, int canvas_width, int canvas_height);

/// Monolithic reference: every group is drawn into a full-canvas layer and
/// composited in order, with no tiling or caching.
Raster rasterize_drawlist(const DrawList& list);

/// Glyph coverage (kGlyphCellW x kGlyphCellH, row-major) for a code point;
/// unknown code points map to '?'.
const unsigned char* glyph_coverage(char32_t cp) noexcept;
inline constexpr int kGlyphCellW = 12;
inline constexpr int kGlyphCellH = 24;
inline constexpr int kGlyphBaseline = 18;
inline constexpr int kGlyphEm = 20;

}  // namespace plotforge::render
