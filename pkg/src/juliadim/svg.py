"""Minimal SVG emission (staircase plots and tile-cover pictures).

No plotting dependency: documents are assembled as strings.  Coordinates
are mapped from a world box to a fixed-size viewport with the y axis
flipped.
"""

from __future__ import annotations

_W, _H, _PAD = 800, 600, 40


def _mapper(x0, x1, y0, y1):
    sx = (_W - 2 * _PAD) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (_H - 2 * _PAD) / (y1 - y0 if y1 > y0 else 1.0)

    def to_px(x, y):
        return _PAD + (x - x0) * sx, _H - _PAD - (y - y0) * sy

    return to_px


def _document(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">\n'
        f'<rect width="{_W}" height="{_H}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def svg_staircase(steps: list[tuple[float, float, float]]) -> str:
    """Piecewise-constant plot from (c_lo, c_hi, bound) triples."""
    if not steps:
        return _document(["<!-- empty -->"])
    xs = [s[0] for s in steps] + [s[1] for s in steps]
    ys = [s[2] for s in steps]
    to_px = _mapper(min(xs), max(xs), min(ys), max(ys))
    pts = []
    for c_lo, c_hi, b in sorted(steps):
        pts.append(to_px(c_lo, b))
        pts.append(to_px(c_hi, b))
    poly = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
    body = [
        f'<polyline points="{poly}" fill="none" stroke="black" stroke-width="1.5"/>'
    ]
    return _document(body)


def svg_tiles(discs: list[tuple[int, complex, float, bool]]) -> str:
    """Tile-cover picture from (kind, center, radius, upper) tuples.

    kind 0 draws a circle, kinds 1/2 draw axis segments; covers from the
    upper half plane are blue, lower ones red.
    """
    body = []
    to_px = _mapper(-2.2, 2.2, -2.2 * _H / _W, 2.2 * _H / _W)
    scale = (_W - 2 * _PAD) / 4.4
    for kind, m, r, upper in discs:
        color = "blue" if upper else "red"
        if kind == 0:
            x, y = to_px(m.real, m.imag)
            body.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r * scale:.2f}" '
                f'fill="none" stroke="{color}" stroke-width="0.4"/>'
            )
        else:
            dx, dy = (r, 0.0) if kind == 1 else (0.0, r)
            x1, y1 = to_px(m.real - dx, m.imag - dy)
            x2, y2 = to_px(m.real + dx, m.imag + dy)
            body.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                f'stroke="{color}" stroke-width="0.6"/>'
            )
    return _document(body)
