#pragma once

#include <cstdint>
#include <string>
#include <vector>

// A small PostScript-subset interpreter for checking EPS output: it runs the
// operators the exporter emits (paths, fills, clipping, Latin-1 text with a
// fixed monospace font, colorimage) and rasterizes onto an RGBA canvas. Any
// unknown operator, type error, stack underflow or unbalanced gsave is an
// error.
namespace ps {

struct Canvas {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgba;  // straight RGBA, white initially
};

struct Result {
    std::vector<std::string> errors;  // empty when the document is valid
    Canvas canvas;
    int bbox_w = 0;
    int bbox_h = 0;
    std::size_t operators_run = 0;
};

/// Checks the DSC frame (EPSF-3.0 header, exactly one %%BoundingBox,
/// %%EOF trailer) and executes the body. The page of bbox_w x bbox_h points
/// is rasterized at width x height pixels with pixel centers on integers.
Result run(const std::string& eps, int width, int height);

/// Fraction of pixels where any channel differs by more than `tolerance`.
double differing_fraction(const Canvas& a, const std::vector<std::uint8_t>& b_rgba, int tolerance);

}  // namespace ps
