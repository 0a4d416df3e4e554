"""SVG pictures of disc nodal portraits.

The unit circle is inscribed in a square canvas.  Interior circles sit at the
portrait radii and the k diameters at angles theta = (l pi - theta0) / k,
where sin(k theta + theta0) vanishes.  Numbers are written with a fixed
number of decimals so equal inputs give byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .nodal_disc import NodalPortrait

MIN_CANVAS = 64
_DECIMALS = 3


@dataclass(frozen=True)
class RenderSpec:
    portrait: NodalPortrait
    theta0: float = 0.0
    canvas_px: int = 256
    stroke_width_px: float = 1.5

    def __post_init__(self):
        if int(self.canvas_px) != self.canvas_px or self.canvas_px < MIN_CANVAS:
            raise ValueError(f"canvas_px must be an integer >= {MIN_CANVAS}")
        if not self.stroke_width_px > 0:
            raise ValueError("stroke_width_px must be positive")
        if not math.isfinite(self.theta0):
            raise ValueError("theta0 must be finite")


def _num(x: float) -> str:
    out = f"{x:.{_DECIMALS}f}"
    return "0." + "0" * _DECIMALS if out == "-0." + "0" * _DECIMALS else out


def diameter_angles(k: int, theta0: float = 0.0) -> list[float]:
    """Angles in [0, pi) of the k nodal diameters of sin(k theta + theta0)."""
    if k == 0:
        return []
    return [((l * math.pi - theta0) / k) % math.pi for l in range(k)]


def render_svg(spec: RenderSpec) -> str:
    p = spec.portrait
    size = int(spec.canvas_px)
    c = size / 2.0
    # keep the whole stroke of the boundary inside the canvas
    r0 = c - spec.stroke_width_px
    style = f'fill="none" stroke="black" stroke-width="{_num(spec.stroke_width_px)}"'
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{p.bc} mode k={p.k} s={p.s}</title>",
        f'<circle class="boundary" cx="{_num(c)}" cy="{_num(c)}" r="{_num(r0)}" {style}/>',
    ]
    for r in p.circle_radii:
        lines.append(f'<circle class="nodal" cx="{_num(c)}" cy="{_num(c)}" r="{_num(r * r0)}" {style}/>')
    for t in diameter_angles(p.k, spec.theta0):
        dx, dy = r0 * math.cos(t), r0 * math.sin(t)
        # SVG y points down
        lines.append(f'<line class="nodal" x1="{_num(c - dx)}" y1="{_num(c + dy)}" '
                     f'x2="{_num(c + dx)}" y2="{_num(c - dy)}" {style}/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
