"""Deterministic SVG pictures of the model.

Coordinates are mapped to pixels with exact integer arithmetic
(floor(scale * num / den)); re-rendering identical arguments is
byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .params import Param, PlaidError, Rat
from .grid import BlockGrid, GridLine, light_points_on_line, trace_polygons
from .pet import oriented_label_scaled, xi_hat_scaled

LAYERS = ("grid-lines", "light-points", "connectors", "polygons",
          "orientation-arrows")

_DEFAULT_PALETTE = {
    "H": "#bbbbbb", "V": "#bbbbbb", "P": "#4477cc", "Q": "#cc5544",
    "light-points": "#111111", "connectors": "#007700",
    "polygons": "#000000", "orientation-arrows": "#aa00aa",
}


@dataclass(frozen=True)
class RenderConfig:
    window: Tuple[int, int, int, int]
    scale: int = 24
    layers: Tuple[str, ...] = ("polygons",)
    palette: Dict[str, str] = field(default_factory=dict)

    def color(self, key: str) -> str:
        return self.palette.get(key, _DEFAULT_PALETTE[key])

    def __post_init__(self):
        x0, y0, x1, y1 = self.window
        if self.scale < 1 or x1 <= x0 or y1 <= y0:
            raise PlaidError("window must be nonempty and scale >= 1")
        for layer in self.layers:
            if layer not in LAYERS:
                raise PlaidError(f"unknown layer {layer!r}")


def _px(cfg: RenderConfig, x: Rat) -> int:
    x = Fraction(x) - cfg.window[0]
    return (x.numerator * cfg.scale) // x.denominator


def _py(cfg: RenderConfig, y: Rat) -> int:
    y = Fraction(cfg.window[3]) - Fraction(y)
    return (y.numerator * cfg.scale) // y.denominator


def _line(cfg, x0, y0, x1, y1, color, width=1) -> str:
    return (f'<line x1="{_px(cfg, x0)}" y1="{_py(cfg, y0)}" '
            f'x2="{_px(cfg, x1)}" y2="{_py(cfg, y1)}" '
            f'stroke="{color}" stroke-width="{width}"/>')


def _clip_diag(param: Param, b: int, slope_num: int, cfg: RenderConfig):
    """Endpoints of y = b - (slope_num/omega) x clipped to the window."""
    w = param.omega
    x0, y0, x1, y1 = cfg.window
    s = Fraction(slope_num, w)
    pts = []
    for x in (Fraction(x0), Fraction(x1)):
        y = b - s * x
        if y0 <= y <= y1:
            pts.append((x, y))
    for y in (Fraction(y0), Fraction(y1)):
        x = (b - y) / s
        if x0 <= x <= x1:
            pts.append((x, y))
    pts = sorted(set(pts))
    return (pts[0], pts[-1]) if len(pts) >= 2 else None


def _grid_lines(param: Param, cfg: RenderConfig) -> List[str]:
    x0, y0, x1, y1 = cfg.window
    out = []
    for m in range(y0, y1 + 1):
        out.append(_line(cfg, x0, m, x1, m, cfg.color("H")))
    for n in range(x0, x1 + 1):
        out.append(_line(cfg, n, y0, n, y1, cfg.color("V")))
    for fam, s in (("P", 2 * param.p), ("Q", 2 * param.q)):
        blo = y0 + (s * x0) // param.omega
        bhi = y1 + (s * x1) // param.omega + 1
        for b in range(blo, bhi + 1):
            seg = _clip_diag(param, b, s, cfg)
            if seg:
                (ax, ay), (bx, by) = seg
                out.append(_line(cfg, ax, ay, bx, by, cfg.color(fam)))
    return out


def _blocks_of_window(param: Param, cfg: RenderConfig):
    w = param.omega
    x0, y0, x1, y1 = cfg.window
    for bi in range(x0 // w, (x1 - 1) // w + 1):
        for bj in range(y0 // w, (y1 - 1) // w + 1):
            yield bi, bj


def _light_points(param: Param, cfg: RenderConfig) -> List[str]:
    out = []
    seen = set()
    for bi, bj in _blocks_of_window(param, cfg):
        for m in range(bj * param.omega, (bj + 1) * param.omega + 1):
            for x, mult in light_points_on_line(param, GridLine("H", m),
                                                (bi, bj)):
                key = (x, Fraction(m))
                if key not in seen:
                    seen.add(key)
                    r = 2 + 2 * (mult - 1)
                    out.append(f'<circle cx="{_px(cfg, x)}" cy="{_py(cfg, m)}" '
                               f'r="{r}" fill="{cfg.color("light-points")}"/>')
        for n in range(bi * param.omega, (bi + 1) * param.omega + 1):
            for y, mult in light_points_on_line(param, GridLine("V", n),
                                                (bi, bj)):
                key = (Fraction(n), y)
                if key not in seen:
                    seen.add(key)
                    out.append(f'<circle cx="{_px(cfg, n)}" cy="{_py(cfg, y)}" '
                               f'r="2" fill="{cfg.color("light-points")}"/>')
    return out


def _connectors(param: Param, cfg: RenderConfig, arrows: bool) -> List[str]:
    w = param.omega
    x0, y0, x1, y1 = cfg.window
    out = []
    half = Fraction(1, 2)
    mid = {"N": (0, half), "S": (0, -half), "E": (half, 0), "W": (-half, 0)}
    for bi, bj in _blocks_of_window(param, cfg):
        grid = BlockGrid(param, bi)
        for n in range(w):
            for m in range(w):
                gx, gy = bi * w + n, bj * w + m
                if not (x0 <= gx < x1 and y0 <= gy < y1):
                    continue
                cx, cy = gx + half, gy + half
                if arrows:
                    lab = oriented_label_scaled(
                        param, *xi_hat_scaled(param, gx, gy))
                    edges = [] if lab == "EMPTY" else [lab[0], lab[1]]
                else:
                    edges = sorted(grid.good_edge_set(n, m))
                color = cfg.color(
                    "orientation-arrows" if arrows else "connectors")
                for i, e in enumerate(edges):
                    dx, dy = mid[e]
                    out.append(_line(cfg, cx, cy, cx + dx, cy + dy, color, 2))
                    if arrows and i == 1:
                        # head marker on the exit edge
                        hx, hy = _px(cfg, cx + dx), _py(cfg, cy + dy)
                        out.append(f'<circle cx="{hx}" cy="{hy}" r="3" '
                                   f'fill="{color}"/>')
    return out


def _polygons(param: Param, cfg: RenderConfig) -> List[str]:
    out = []
    for bi, bj in _blocks_of_window(param, cfg):
        for pg in trace_polygons(param, (bi, bj)):
            pts = " ".join(f"{_px(cfg, x)},{_py(cfg, y)}"
                           for x, y in pg.vertices)
            out.append(f'<polygon points="{pts}" fill="none" '
                       f'stroke="{cfg.color("polygons")}" stroke-width="2"/>')
    return out


def render_svg(param: Param, cfg: RenderConfig) -> str:
    """The requested layers over the window, as a standalone SVG document."""
    x0, y0, x1, y1 = cfg.window
    width = (x1 - x0) * cfg.scale
    height = (y1 - y0) * cfg.scale
    body: List[str] = []
    if "grid-lines" in cfg.layers:
        body += _grid_lines(param, cfg)
    if "light-points" in cfg.layers:
        body += _light_points(param, cfg)
    if "connectors" in cfg.layers:
        body += _connectors(param, cfg, arrows=False)
    if "polygons" in cfg.layers:
        body += _polygons(param, cfg)
    if "orientation-arrows" in cfg.layers:
        body += _connectors(param, cfg, arrows=True)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"
