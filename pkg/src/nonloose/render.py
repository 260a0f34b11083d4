"""Deterministic text/SVG emitters for mountain ranges."""

from __future__ import annotations

import os
from xml.sax.saxutils import escape

from .atlas import MountainRange

MAX_CELLS = 10_000


def _cell_budget() -> int:
    env = os.environ.get("ATLAS_MAX_CELLS")
    return int(env) if env else MAX_CELLS


def _grid(mrange: MountainRange):
    tb_lo, tb_hi = mrange.tb_range
    if mrange.points:
        rot_lo, rot_hi = mrange.rot_range
    else:
        rot_lo, rot_hi = 0, 0
    cells = (tb_hi - tb_lo + 1) * (rot_hi - rot_lo + 1)
    if cells > _cell_budget():
        raise ValueError(
            f"window of {cells} cells exceeds the limit of {_cell_budget()}; "
            "narrow the tb window or raise ATLAS_MAX_CELLS"
        )
    return tb_lo, tb_hi, rot_lo, rot_hi


def _glyph(info) -> str:
    if info.extra:
        return "E"
    if info.tower:
        return "*"
    if info.count >= 2:
        return "2"
    return "o"


def render_ascii(mrange: MountainRange) -> str:
    """Rows are tb descending, columns rot ascending; one glyph per point."""
    tb_lo, tb_hi, rot_lo, rot_hi = _grid(mrange)
    header = f"(p,q)=({mrange.p},{mrange.q})  d3={mrange.d3}  tb {tb_hi}..{tb_lo}  rot {rot_lo}..{rot_hi}"
    lines = [header]
    if not mrange.points:
        return header + "\n"
    width = max(len(str(tb_hi)), len(str(tb_lo)))
    for tb in range(tb_hi, tb_lo - 1, -1):
        row = []
        for rot in range(rot_lo, rot_hi + 1):
            info = mrange.points.get((rot, tb))
            row.append("." if info is None else _glyph(info))
        lines.append(f"{tb:>{width}d} " + " ".join(row))
    ticks = [rot_lo, 0, rot_hi] if rot_lo < 0 < rot_hi else [rot_lo, rot_hi]
    axis = [" "] * (rot_hi - rot_lo + 1)
    for t in ticks:
        axis[t - rot_lo] = "^"
    lines.append(" " * (width + 1) + " ".join(axis))
    lines.append(" " * (width + 1) + "rot ticks at " + ", ".join(str(t) for t in ticks))
    return "\n".join(lines) + "\n"


def render_svg(mrange: MountainRange) -> str:
    """One marker per lattice point with hover metadata."""
    tb_lo, tb_hi, rot_lo, rot_hi = _grid(mrange)
    scale = 14
    pad = 30
    width = (rot_hi - rot_lo + 1) * scale + 2 * pad
    height = (tb_hi - tb_lo + 1) * scale + 2 * pad

    def x(rot):
        return pad + (rot - rot_lo) * scale

    def y(tb):
        return pad + (tb_hi - tb) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>({mrange.p},{mrange.q}) torus knot, d3={mrange.d3}</title>",
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for (rot, tb), info in sorted(mrange.points.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        if info.extra:
            color = "black"
        elif info.tower:
            color = "#7a1fa2"
        elif info.count >= 2:
            color = "#c62828"
        else:
            color = "#1565c0"
        label = escape(
            f"rot={rot} tb={tb} count={info.count}"
            + (" tower" if info.tower else "")
            + (" extra" if info.extra else "")
            + " [" + ",".join(info.families) + "]"
        )
        parts.append(
            f'<circle cx="{x(rot)}" cy="{y(tb)}" r="4" fill="{color}">'
            f"<title>{label}</title></circle>"
        )
    parts.append(
        f'<text x="{pad}" y="{height - 8}" font-size="10">'
        f"rot {rot_lo}..{rot_hi}, tb {tb_lo}..{tb_hi}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
