#include "plotforge/export/png.hpp"

#include <cstring>
#include <fstream>

#include <zlib.h>

#include "plotforge/error.hpp"

namespace plotforge::exporter {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void chunk(std::vector<std::uint8_t>& out, const char type[4], const std::vector<std::uint8_t>& data)
{
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, out.data() + start, static_cast<uInt>(out.size() - start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

std::vector<std::uint8_t> deflate_rows(const render::Raster& r)
{
    const std::size_t stride = static_cast<std::size_t>(r.width) * 4;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * static_cast<std::size_t>(r.height));
    for (int y = 0; y < r.height; ++y) {
        raw.push_back(0);
        const auto* row = r.pixels.data() + stride * static_cast<std::size_t>(y);
        raw.insert(raw.end(), row, row + stride);
    }

    z_stream zs{};
    if (deflateInit2(&zs, 6, Z_DEFLATED, 15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error(ErrorCode::IoFailure, "png", "deflate initialization failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(raw.size())));
    zs.next_in = raw.data();
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const std::size_t produced = out.size() - zs.avail_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) {
        throw Error(ErrorCode::IoFailure, "png", "deflate failed");
    }
    out.resize(produced);
    return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const render::Raster& raster)
{
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    std::vector<std::uint8_t> out(signature, signature + 8);

    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(raster.width));
    put_u32(ihdr, static_cast<std::uint32_t>(raster.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(6);  // RGBA
    ihdr.push_back(0);  // deflate
    ihdr.push_back(0);  // adaptive filtering (type 0 used throughout)
    ihdr.push_back(0);  // no interlace
    chunk(out, "IHDR", ihdr);
    chunk(out, "IDAT", deflate_rows(raster));
    chunk(out, "IEND", {});
    return out;
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw Error(ErrorCode::IoFailure, path.string(), "cannot open for writing");
    }
    f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    f.close();
    if (!f) {
        throw Error(ErrorCode::IoFailure, path.string(), "write failed");
    }
}

void write_png(const render::Raster& raster, const std::filesystem::path& path)
{
    const auto bytes = encode_png(raster);
    write_file(path, bytes.data(), bytes.size());
}

}  // namespace plotforge::exporter
