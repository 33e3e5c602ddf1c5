"""Deterministic SVG output for the sweep and trajectory figures.

Hand-rolled SVG so identical inputs always produce identical bytes;
no plotting library is involved.
"""

from __future__ import annotations

import io
import math

from .executor import HybridTrajectory
from .flight import propagate
from .model import BallParams, Parabola, Plane, Surface
from .sweep import SweepCell

__all__ = ["render_polar_svg", "render_trajectory_svg", "BOUNCE_PALETTE"]

# Fixed legend: bounce count -> marker color.  -1 marks unsolved cells.
BOUNCE_PALETTE = {
    -1: "#000000",
    0: "#4e79a7",
    1: "#f28e2b",
    2: "#59a14f",
    3: "#e15759",
    4: "#b07aa1",
    5: "#76b7b2",
}

_SIZE = 640
_MARGIN = 60


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_polar_svg(
    cells: list[SweepCell], path: str, failure_only: bool = False
) -> None:
    """Polar scatter: radius is target time, angle is target change in
    orientation, color is the bounce count.  With failure_only only the
    unsolved cells are drawn (legend is always emitted)."""
    if not cells:
        raise ValueError("no cells to render")
    t_max = max(c.T for c in cells)
    cx = cy = _SIZE / 2.0
    r_max = _SIZE / 2.0 - _MARGIN
    out = io.StringIO()
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">\n'
    )
    out.write(f'<rect width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>\n')
    for frac in (0.25, 0.5, 0.75, 1.0):
        out.write(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r_max * frac)}" '
            f'fill="none" stroke="#dddddd" stroke-width="1"/>\n'
        )
    for c in cells:
        if failure_only and c.bounces != -1:
            continue
        r = r_max * (c.T / t_max if t_max > 0 else 0.0)
        x = cx + r * math.cos(c.theta_f)
        y = cy - r * math.sin(c.theta_f)
        color = BOUNCE_PALETTE.get(c.bounces, "#888888")
        out.write(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.0" fill="{color}"/>\n'
        )
    ly = 16
    for b in sorted(BOUNCE_PALETTE):
        label = "unsolved" if b == -1 else f"{b} bounce" + ("s" if b != 1 else "")
        out.write(
            f'<rect x="8" y="{ly - 10}" width="10" height="10" fill="{BOUNCE_PALETTE[b]}"/>\n'
            f'<text x="22" y="{ly}" font-family="sans-serif" font-size="11">{label}</text>\n'
        )
        ly += 16
    out.write("</svg>\n")
    _write(path, out.getvalue())


def _diverging_color(t: float) -> str:
    """t in [-1, 1] -> blue / grey / red ramp."""
    t = max(-1.0, min(1.0, t))
    lo = (33, 102, 172)
    mid = (150, 150, 150)
    hi = (178, 24, 43)
    if t < 0:
        a, b, s = lo, mid, t + 1.0
    else:
        a, b, s = mid, hi, t
    rgb = tuple(round(a[i] + (b[i] - a[i]) * s) for i in range(3))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def render_trajectory_svg(
    traj: HybridTrajectory,
    p: BallParams,
    path: str,
    surface: Surface | None = None,
    color_by_omega: bool = False,
    samples_per_arc: int = 24,
) -> None:
    """Plot the flight path; optionally color segments by angular
    velocity on a symmetric diverging scale clipped at max |omega|."""
    pts: list[tuple[float, float, float]] = []  # (x, y, omega)
    for arc in traj.arcs:
        for i in range(samples_per_arc + 1):
            s = propagate(arc.start, arc.duration * i / samples_per_arc, p)
            pts.append((s.x, s.y, s.omega))
    if not pts:
        s = traj.terminal
        pts = [(s.x, s.y, s.omega)]
    xs = [q[0] for q in pts]
    ys = [q[1] for q in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    pad = 0.05 * max(x_hi - x_lo, y_hi - y_lo, 1e-6)
    x_lo, x_hi, y_lo, y_hi = x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad
    scale = (_SIZE - 2 * _MARGIN) / max(x_hi - x_lo, y_hi - y_lo)

    def to_screen(x: float, y: float) -> tuple[float, float]:
        return (_MARGIN + (x - x_lo) * scale, _SIZE - _MARGIN - (y - y_lo) * scale)

    out = io.StringIO()
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">\n'
    )
    out.write(f'<rect width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>\n')

    if surface is not None:
        spts = []
        n_s = 100
        for i in range(n_s + 1):
            x = x_lo + (x_hi - x_lo) * i / n_s
            if isinstance(surface, Plane):
                tb = surface.table
                cu = math.cos(tb.u)
                if abs(cu) < 1e-9:
                    continue
                y = (x * math.sin(tb.u) + tb.v) / cu
            else:
                y = surface.alpha * x * x
            spts.append(to_screen(x, y))
        if spts:
            d = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in spts)
            out.write(
                f'<polyline points="{d}" fill="none" stroke="#444444" stroke-width="1.5"/>\n'
            )

    if color_by_omega:
        omax = max(abs(q[2]) for q in pts) or 1.0
        for a, b in zip(pts, pts[1:]):
            (x1, y1), (x2, y2) = to_screen(a[0], a[1]), to_screen(b[0], b[1])
            color = _diverging_color(0.5 * (a[2] + b[2]) / omax)
            out.write(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="{color}" stroke-width="1.5"/>\n'
            )
    else:
        d = " ".join(
            f"{_fmt(px)},{_fmt(py)}" for px, py in (to_screen(q[0], q[1]) for q in pts)
        )
        out.write(
            f'<polyline points="{d}" fill="none" stroke="#4e79a7" stroke-width="1.5"/>\n'
        )
    out.write("</svg>\n")
    _write(path, out.getvalue())


def _write(path: str, content: str) -> None:
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(content)
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc}") from exc
