"""Core types for the planar bouncing disk.

A disk of mass m, inertia I and radius R moves under gravity above an
impact surface.  The surface is either a controlled tilted plane
(tilt u, height v, with rates du/dv describing how the table moves at
the instant of impact) or a fixed upward parabola.

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

__all__ = [
    "BallParams",
    "BallState",
    "TableConfig",
    "Plane",
    "Parabola",
    "Surface",
    "EnergyBreakdown",
    "guard_value",
    "guard_rate",
    "energy",
    "rotate_frame",
    "local_contact_frame",
    "momenta",
    "uniform_disk",
]


@dataclass(frozen=True, slots=True)
class BallParams:
    """Physical parameters of the disk (SI units)."""

    m: float = 1.0
    I: float = 0.005
    R: float = 0.1
    g: float = 9.81

    def __post_init__(self) -> None:
        if not (self.m > 0 and self.I > 0 and self.R > 0 and self.g > 0):
            raise ValueError("m, I, R, g must all be positive")


def uniform_disk(m: float = 1.0, R: float = 0.1, g: float = 9.81) -> BallParams:
    """Parameters for a uniform disk, I = m R^2 / 2."""
    return BallParams(m=m, I=0.5 * m * R * R, R=R, g=g)


@dataclass(frozen=True, slots=True)
class BallState:
    """Tangent-bundle point of the disk plus absolute time.

    theta is a plain real number; it is never reduced mod 2*pi, so a
    full revolution is distinguishable from no rotation.
    """

    x: float
    y: float
    theta: float
    vx: float
    vy: float
    omega: float
    t: float = 0.0

    def __post_init__(self) -> None:
        # one summed check keeps construction cheap on the hot path;
        # any NaN/inf component poisons the sum
        if not math.isfinite(
            self.x + self.y + self.theta + self.vx + self.vy + self.omega + self.t
        ):
            for name in ("x", "y", "theta", "vx", "vy", "omega", "t"):
                if not math.isfinite(getattr(self, name)):
                    raise ValueError(f"BallState.{name} must be finite")
            raise ValueError("BallState components overflow to non-finite sum")


def momenta(s: BallState, p: BallParams) -> tuple[float, float, float]:
    """(p_x, p_y, p_theta) = (m*vx, m*vy, I*omega)."""
    return (p.m * s.vx, p.m * s.vy, p.I * s.omega)


@dataclass(frozen=True, slots=True)
class TableConfig:
    """Tilted-plane table: tilt u, height v, and their rates at impact."""

    u: float = 0.0
    v: float = 0.0
    du: float = 0.0
    dv: float = 0.0

    def __post_init__(self) -> None:
        for name in ("u", "v", "du", "dv"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"TableConfig.{name} must be finite")

    @property
    def stationary(self) -> bool:
        return self.du == 0.0 and self.dv == 0.0


@dataclass(frozen=True, slots=True)
class Plane:
    table: TableConfig


@dataclass(frozen=True, slots=True)
class Parabola:
    alpha: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0):
            raise ValueError("Parabola.alpha must be positive")


Surface = Union[Plane, Parabola]


@dataclass(frozen=True, slots=True)
class EnergyBreakdown:
    kinetic: float
    potential: float

    @property
    def total(self) -> float:
        return self.kinetic + self.potential


def guard_value(s: BallState, surf: Surface, p: BallParams) -> float:
    """Signed contact function h; negative strictly above the surface.

    Plane:    h = x sin u - y cos u + R + v
    Parabola: h = alpha x^2 - y + R  (vertical-offset contact model: the
              exact boundary distance is approximated by offsetting the
              parabola up by R, which keeps impact times closed-form)
    """
    if isinstance(surf, Plane):
        tb = surf.table
        return s.x * math.sin(tb.u) - s.y * math.cos(tb.u) + p.R + tb.v
    return surf.alpha * s.x * s.x - s.y + p.R


def guard_rate(s: BallState, surf: Surface, p: BallParams) -> float:
    """Time derivative of the contact function along the state.

    Includes the moving-guard terms for a plane whose tilt/height are
    changing at the impact instant.  Impact is admissible only when the
    rate is positive (ball approaching the surface).
    """
    if isinstance(surf, Plane):
        tb = surf.table
        su, cu = math.sin(tb.u), math.cos(tb.u)
        return (
            s.vx * su
            - s.vy * cu
            + (s.x * cu + s.y * su) * tb.du
            + tb.dv
        )
    return 2.0 * surf.alpha * s.x * s.vx - s.vy


def energy(s: BallState, p: BallParams) -> EnergyBreakdown:
    """Kinetic and potential energy, L = T - V with V = m g y."""
    kinetic = 0.5 * p.m * (s.vx * s.vx + s.vy * s.vy) + 0.5 * p.I * s.omega * s.omega
    return EnergyBreakdown(kinetic=kinetic, potential=p.m * p.g * s.y)


def rotate_frame(s: BallState, phi: float) -> BallState:
    """Rotate position and velocity by -phi about the origin.

    theta and omega are untouched: the rotation acts on the plane, not
    on the disk's internal angle, so the rolling constraint direction
    transforms consistently under conjugation by this map.
    """
    c, si = math.cos(phi), math.sin(phi)
    return BallState(
        x=c * s.x + si * s.y,
        y=-si * s.x + c * s.y,
        theta=s.theta,
        vx=c * s.vx + si * s.vy,
        vy=-si * s.vx + c * s.vy,
        omega=s.omega,
        t=s.t,
    )


def local_contact_frame(s: BallState, surf: Surface) -> float:
    """Angle phi that makes the local surface tangent horizontal.

    Rotating the state by phi (rotate_frame) maps the contact geometry
    onto a flat table with outward normal +y.  For a plane this is the
    tilt itself; for the parabola it is the tangent slope angle at the
    center's x.
    """
    if isinstance(surf, Plane):
        return surf.table.u
    return math.atan(2.0 * surf.alpha * s.x)
