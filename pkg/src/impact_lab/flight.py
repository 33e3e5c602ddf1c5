"""Closed-form ballistic flight and exact earliest-impact times.

Between impacts the disk obeys m x'' = 0, m y'' = -m g, I theta'' = 0,
so flight is propagated in closed form (no integrator).  Composing the
flight with either guard gives a quadratic in time, so impact times are
exact roots rather than event-detection output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import BallParams, BallState, Parabola, Plane, Surface, guard_value

__all__ = [
    "FlightArc",
    "propagate",
    "time_to_impact",
    "time_to_impact_oracle",
    "DEFAULT_T_MIN",
]

# Minimum admissible flight time when continuing from an impact point;
# avoids re-detecting the event the trajectory just left.
DEFAULT_T_MIN = 1e-9


@dataclass(frozen=True, slots=True)
class FlightArc:
    start: BallState
    duration: float
    end: BallState


def propagate(s: BallState, dt: float, p: BallParams) -> BallState:
    """Advance the state dt seconds along the ballistic flow."""
    if dt < 0:
        raise ValueError("dt must be nonnegative")
    return BallState(
        x=s.x + s.vx * dt,
        y=s.y + s.vy * dt - 0.5 * p.g * dt * dt,
        theta=s.theta + s.omega * dt,
        vx=s.vx,
        vy=s.vy - p.g * dt,
        omega=s.omega,
        t=s.t + dt,
    )


def guard_quadratic(s: BallState, surf: Surface, p: BallParams) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of h(propagate(s, t)) = a t^2 + b t + c."""
    c = guard_value(s, surf, p)
    if isinstance(surf, Plane):
        tb = surf.table
        su, cu = math.sin(tb.u), math.cos(tb.u)
        a = 0.5 * p.g * cu
        b = s.vx * su - s.vy * cu
    else:
        a = surf.alpha * s.vx * s.vx + 0.5 * p.g
        b = 2.0 * surf.alpha * s.x * s.vx - s.vy
    return a, b, c


def _real_roots(a: float, b: float, c: float) -> list[float]:
    if a == 0.0:
        if b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    # numerically stable split: q/a and c/q
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq
    roots = [q / a]
    if q != 0.0:
        roots.append(c / q)
    elif a != 0.0:
        roots.append(-b / a)
    return roots


def time_to_impact(
    s: BallState, surf: Surface, p: BallParams, t_min: float = DEFAULT_T_MIN
) -> Optional[float]:
    """Smallest t > t_min with h = 0 and the guard rate positive.

    Returns None when the quadratic has no admissible root: the ball
    never strikes this surface again.
    """
    a, b, c = guard_quadratic(s, surf, p)
    best: Optional[float] = None
    for t in _real_roots(a, b, c):
        if t > t_min and b + 2.0 * a * t > 0.0:
            if best is None or t < best:
                best = t
    return best


def time_to_impact_oracle(
    s: BallState,
    surf: Surface,
    p: BallParams,
    t_min: float = DEFAULT_T_MIN,
    horizon: float = 100.0,
    step: float = 1e-4,
) -> Optional[float]:
    """Bracketing/bisection reference for time_to_impact.

    Scans h on a uniform grid for a negative-to-nonnegative sign change,
    then bisects the bracket to 1e-12.  Evaluates the ballistic formulas
    and the guard directly so it shares no root-finding with the closed
    form; intended for tests.
    """

    def h_vec(t: np.ndarray) -> np.ndarray:
        x = s.x + s.vx * t
        y = s.y + s.vy * t - 0.5 * p.g * t * t
        if isinstance(surf, Plane):
            tb = surf.table
            return x * math.sin(tb.u) - y * math.cos(tb.u) + p.R + tb.v
        return surf.alpha * x * x - y + p.R

    def h_at(t: float) -> float:
        return float(h_vec(np.asarray([t]))[0])

    chunk = 65536
    n_total = int(math.ceil((horizon - t_min) / step)) + 1
    prev_t = t_min
    prev_h = h_at(t_min)
    lo = hi = None
    for start in range(1, n_total, chunk):
        stop = min(start + chunk, n_total)
        ts = t_min + step * np.arange(start, stop)
        hs = h_vec(ts)
        # first index where the guard crosses from below
        prev_all = np.concatenate(([prev_h], hs[:-1]))
        hit = np.nonzero((prev_all < 0.0) & (hs >= 0.0))[0]
        if hit.size:
            i = int(hit[0])
            lo = prev_t if i == 0 else float(ts[i - 1])
            hi = float(ts[i])
            break
        prev_t = float(ts[-1])
        prev_h = float(hs[-1])
    if lo is None:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-12:
            break
        if h_at(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
