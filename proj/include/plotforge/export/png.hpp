#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "plotforge/render/surface.hpp"

namespace plotforge::exporter {

/// 8-bit RGBA, non-interlaced, filter 0 on every row, zlib level 6 with
/// default window and strategy. Identical rasters give identical bytes.
std::vector<std::uint8_t> encode_png(const render::Raster& raster);

/// Throws Error(IO_FAILURE) naming the destination.
void write_png(const render::Raster& raster, const std::filesystem::path& path);

/// Writes bytes or throws Error(IO_FAILURE).
void write_file(const std::filesystem::path& path, const void* data, std::size_t size);

}  // namespace plotforge::exporter
