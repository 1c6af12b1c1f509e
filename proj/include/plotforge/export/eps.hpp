#pragma once

#include <filesystem>
#include <string>

#include "plotforge/render/drawlist.hpp"

namespace plotforge::exporter {

/// EPSF-3.0 text for a draw list scaled to width x height points. Device y
/// is flipped (y' = height - y * sy). PostScript has no alpha, so
/// translucent colors are pre-blended against white. Text uses Helvetica
/// re-encoded to ISO Latin-1 and is placed at the layout's monospace
/// positions.
std::string encode_eps(const render::DrawList& list, int width_pt, int height_pt);

/// Throws Error(IO_FAILURE).
void write_eps(const render::DrawList& list, int width_pt, int height_pt, const std::filesystem::path& path);

/// Trimmed decimal used for coordinates: at most 3 decimals, no trailing
/// zeros, never "-0".
std::string ps_number(double v);

/// UTF-8 to a PostScript string literal body in ISO Latin-1.
std::string ps_string(const std::string& utf8);

}  // namespace plotforge::exporter
