"""Elastic reset maps for the disk.

Three routes are provided:

* ``slippery_reset`` -- frictionless specular reflection of the normal
  momentum; preserves the disk's angular velocity.
* ``rolling_reset_flat`` / ``rolling_reset`` -- the rolling-without-
  slipping reset in closed form (flat table, possibly moving) and its
  extension to tilted planes and the parabola by conjugation with a
  frame rotation.  This law couples spin to tangential velocity and
  breaks the rotational symmetry.
* ``impact_equation_solve`` -- direct solve of the five impact
  equations (three momentum jumps, energy jump, post-impact rolling
  constraint); handles moving tilted tables and doubles as the oracle
  for the closed forms.

All resets are instantaneous: position and time are unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    BallParams,
    BallState,
    Plane,
    Surface,
    TableConfig,
    energy,
    guard_rate,
    guard_value,
    local_contact_frame,
    momenta,
    rotate_frame,
)

__all__ = [
    "ImpactOutcome",
    "ImpactError",
    "NotImpactingError",
    "NoElasticSolutionError",
    "slippery_reset",
    "rolling_reset_flat",
    "rolling_reset",
    "impact_equation_solve",
    "GUARD_TOL",
]

# Slack for "state sits on the guard": callers land there via
# closed-form impact times, so this never acts as a solver knob.
GUARD_TOL = 1e-9


def _with_velocity(s: BallState, vx: float, vy: float, omega: float) -> BallState:
    """Copy of s with new velocities; position and time are untouched."""
    return BallState(s.x, s.y, s.theta, vx, vy, omega, s.t)


class ImpactError(Exception):
    """Base class for reset failures."""


class NotImpactingError(ImpactError):
    """State is not on the guard with an approaching velocity."""


class NoElasticSolutionError(ImpactError):
    """No departing elastic post-state exists (e.g. retreating table)."""


@dataclass(frozen=True, slots=True)
class ImpactOutcome:
    """Post-impact state plus the impact multipliers.

    epsilon scales the guard normal, lam the rolling constraint; both
    are returned for diagnostics.  energy_delta is the realized jump
    E(post) - E(pre), zero for stationary surfaces.
    """

    post: BallState
    epsilon: float
    lam: float
    energy_delta: float


def _require_admissible(s: BallState, surf: Surface, p: BallParams) -> None:
    h = guard_value(s, surf, p)
    if abs(h) > GUARD_TOL:
        raise NotImpactingError(f"state is not on the guard (h={h:g})")
    if guard_rate(s, surf, p) <= 0.0:
        raise NotImpactingError("guard rate must be positive at impact")


def slippery_reset(
    s: BallState,
    surf: Surface,
    p: BallParams,
    require_approach: bool = True,
) -> ImpactOutcome:
    """Frictionless elastic reflection against a stationary surface.

    Reflects the metric-normal component of the linear velocity; omega
    is untouched, so both the angular momentum I*omega and the angular
    velocity pass through the reset unchanged.

    ``require_approach=False`` lifts the admissibility check so the map
    can be applied as an involution in tests.
    """
    if isinstance(surf, Plane) and not surf.table.stationary:
        raise NotImpactingError("slippery reset requires a stationary surface")
    if require_approach:
        _require_admissible(s, surf, p)
    phi = local_contact_frame(s, surf)
    sphi, cphi = math.sin(phi), math.cos(phi)
    vn = s.vx * sphi - s.vy * cphi
    post = _with_velocity(s, s.vx - 2.0 * vn * sphi, s.vy + 2.0 * vn * cphi, s.omega)
    # epsilon is the normal momentum change m*(vn+ - vn-) = -2 m vn
    return ImpactOutcome(post=post, epsilon=-2.0 * p.m * vn, lam=0.0, energy_delta=0.0)


def rolling_reset_flat(
    s: BallState, table: TableConfig, p: BallParams
) -> ImpactOutcome:
    """Closed-form rolling reset on a flat (u = 0) table.

    The table may be moving: du and dv are the tilt/height rates at the
    impact instant and enter through w = du*x + dv, which injects or
    removes energy.  The post-state rolls: R*omega+ + vx+ = 0.
    """
    if table.u != 0.0:
        raise ValueError("rolling_reset_flat requires u = 0")
    _require_admissible(s, Plane(table), p)
    m, I, R = p.m, p.I, p.R
    px, py, pth = momenta(s, p)
    w = table.du * s.x + table.dv
    coupled = R * px - pth
    px_post = R * m / (I + m * R * R) * coupled
    pth_post = I / (I + m * R * R) * (pth - R * px)
    radicand = (
        px * px
        + (py - m * w) ** 2
        + (m / I) * pth * pth
        - m / (I + m * R * R) * coupled * coupled
    )
    if radicand < 0.0:
        raise NoElasticSolutionError(
            "table retreats faster than the ball; no elastic impact"
        )
    py_post = math.sqrt(radicand) + m * w
    post = _with_velocity(s, px_post / m, py_post / m, pth_post / I)
    lam = (pth_post - pth) / R
    eps = -(py_post - py)
    e_delta = energy(post, p).total - energy(s, p).total
    return ImpactOutcome(post=post, epsilon=eps, lam=lam, energy_delta=e_delta)


def rolling_reset(s: BallState, surf: Surface, p: BallParams) -> ImpactOutcome:
    """Rolling reset against any stationary surface.

    Built by conjugation: rotate the state so the local tangent is
    horizontal, apply the flat closed form, rotate back.  The post-state
    satisfies R*omega+ + vx+*cos(phi) + vy+*sin(phi) = 0 at the contact
    angle phi.
    """
    if isinstance(surf, Plane) and not surf.table.stationary:
        raise NotImpactingError(
            "rolling_reset handles stationary surfaces; use impact_equation_solve"
        )
    _require_admissible(s, surf, p)
    phi = local_contact_frame(s, surf)
    s_flat = rotate_frame(s, phi)
    flat_table = TableConfig(u=0.0, v=s_flat.y - p.R)
    out = rolling_reset_flat(s_flat, flat_table, p)
    post = rotate_frame(out.post, -phi)
    return ImpactOutcome(post=post, epsilon=out.epsilon, lam=out.lam, energy_delta=0.0)


def impact_equation_solve(
    s: BallState,
    surf: Surface,
    p: BallParams,
    constrained: bool = True,
) -> ImpactOutcome:
    """Solve the five impact equations directly.

    Unknowns are (vx+, vy+, omega+, epsilon, lam).  The rolling
    constraint fixes lam linearly; the energy jump then gives a
    quadratic in epsilon whose departing branch (epsilon < 0, post
    guard rate < 0) is selected.  This is the only route for a moving
    tilted table and serves as the oracle for the closed forms.

    With ``constrained=False`` the constraint row is dropped and lam is
    forced to zero, which recovers the slippery reset.
    """
    _require_admissible(s, surf, p)
    m, I, R = p.m, p.I, p.R
    if isinstance(surf, Plane):
        tb = surf.table
        u = tb.u
        su, cu = math.sin(u), math.cos(u)
        # moving-guard term: dh/dt at fixed configuration
        W = (s.x * cu + s.y * su) * tb.du + tb.dv
    else:
        u = local_contact_frame(s, surf)
        su, cu = math.sin(u), math.cos(u)
        W = 0.0
    vt = s.vx * cu + s.vy * su
    vn = s.vx * su - s.vy * cu

    if constrained:
        lam = -(R * s.omega + vt) / (R * R / I + 1.0 / m)
    else:
        lam = 0.0
    vt_post = vt + lam / m
    om_post = s.omega + lam * R / I

    # kinetic-energy change from the tangential/spin update
    K = (
        0.5 * m * (vt_post * vt_post - vt * vt)
        + 0.5 * I * (om_post * om_post - s.omega * s.omega)
    )
    # epsilon^2/(2m) + (vn + W) epsilon + K = 0
    B = vn + W
    disc = B * B - 2.0 * K / m
    if disc < 0.0:
        raise NoElasticSolutionError("impact equations have no real solution")
    sq = math.sqrt(disc)
    chosen = None
    for eps in (m * (-B - sq), m * (-B + sq)):
        hdot_post = vn + eps / m + W
        if eps < 0.0 and hdot_post < 0.0:
            if chosen is None or eps < chosen:
                chosen = eps
    if chosen is None:
        raise NoElasticSolutionError("no departing post-impact branch")
    eps = chosen
    vx_post = s.vx + (eps * su + lam * cu) / m
    vy_post = s.vy + (-eps * cu + lam * su) / m
    post = _with_velocity(s, vx_post, vy_post, om_post)
    e_delta = energy(post, p).total - energy(s, p).total
    return ImpactOutcome(post=post, epsilon=eps, lam=lam, energy_delta=e_delta)
