#!/usr/bin/env python3
"""Rasterize DejaVu Sans Mono into the embedded glyph coverage table.

Cells are 12x24 texels at a 20 px em with the baseline on row 18, which
matches the fixed metrics used by layout (advance 0.6 em, line 1.2 em).
Output is src/render/font_atlas.inc; rerun only when the glyph set changes.
"""
import sys
from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf"
EM = 20
CELL_W, CELL_H, BASELINE = 12, 24, 18
EXTRA = [0x00B0, 0x00B1, 0x00B5, 0x2032, 0x2033, 0x2212]


def main(out: Path) -> None:
    font = ImageFont.truetype(FONT, EM)
    codepoints = list(range(32, 127)) + EXTRA
    lines = [
        "// Generated by tools/gen_font_atlas.py from DejaVu Sans Mono",
        "// (Bitstream Vera derived license). Do not edit by hand.",
        f"constexpr int kAtlasCellW = {CELL_W};",
        f"constexpr int kAtlasCellH = {CELL_H};",
        f"constexpr int kAtlasBaseline = {BASELINE};",
        f"constexpr int kAtlasEm = {EM};",
        f"constexpr int kAtlasGlyphCount = {len(codepoints)};",
        "constexpr char32_t kAtlasCodepoints[kAtlasGlyphCount] = {",
    ]
    lines.append("    " + ", ".join(f"0x{cp:04X}" for cp in codepoints) + ",")
    lines.append("};")
    lines.append("constexpr unsigned char kAtlasCoverage[kAtlasGlyphCount][kAtlasCellH * kAtlasCellW] = {")
    for cp in codepoints:
        img = Image.new("L", (CELL_W, CELL_H), 0)
        ImageDraw.Draw(img).text((0, BASELINE), chr(cp), fill=255, font=font, anchor="ls")
        data = list(img.tobytes())
        lines.append(f"    {{ // U+{cp:04X}")
        for row in range(CELL_H):
            vals = data[row * CELL_W:(row + 1) * CELL_W]
            lines.append("        " + ",".join(f"{v:3d}" for v in vals) + ",")
        lines.append("    },")
    lines.append("};")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/render/font_atlas.inc")
