"""Hybrid execution: alternate ballistic flight with impact resets.

``run_schedule`` plays a finite list of table placements against the
disk, one placement per bounce; the table teleports to the next entry
immediately after each reset and never interacts with the ball
mid-flight.  ``run_surface`` bounces against one fixed surface, which
is what the parabola limit-cycle study uses.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .flight import DEFAULT_T_MIN, FlightArc, propagate, time_to_impact
from .impacts import (
    ImpactError,
    ImpactOutcome,
    impact_equation_solve,
    rolling_reset,
    rolling_reset_flat,
    slippery_reset,
)
from .model import (
    BallParams,
    BallState,
    Parabola,
    Plane,
    Surface,
    TableConfig,
    guard_value,
    local_contact_frame,
    rotate_frame,
)

__all__ = [
    "Termination",
    "Apex",
    "FixedTime",
    "TerminalMode",
    "ControlSchedule",
    "ImpactEvent",
    "HybridTrajectory",
    "run_schedule",
    "run_surface",
    "rolling_impact",
    "trajectory_to_csv",
]


class Termination(enum.Enum):
    APEX_REACHED = "ApexReached"
    TIME_REACHED = "TimeReached"
    NO_MORE_IMPACTS = "NoMoreImpacts"
    ZENO_GUARD = "ZenoGuard"
    INFEASIBLE_PLACEMENT = "InfeasiblePlacement"


@dataclass(frozen=True, slots=True)
class Apex:
    """Terminate at the first instant after the final bounce with vy = 0."""


@dataclass(frozen=True, slots=True)
class FixedTime:
    T: float


TerminalMode = Union[Apex, FixedTime]


@dataclass(frozen=True, slots=True)
class ControlSchedule:
    """Per-bounce table placements; the k-th impact uses entries[k]."""

    entries: tuple[TableConfig, ...]
    max_bounces: int

    def __post_init__(self) -> None:
        if self.max_bounces < 0:
            raise ValueError("max_bounces must be nonnegative")
        if len(self.entries) < self.max_bounces:
            raise ValueError("schedule needs one entry per anticipated bounce")


@dataclass(frozen=True, slots=True)
class ImpactEvent:
    pre: BallState
    outcome: ImpactOutcome
    table: TableConfig


@dataclass(frozen=True, slots=True)
class HybridTrajectory:
    arcs: tuple[FlightArc, ...]
    events: tuple[ImpactEvent, ...]
    terminal: BallState
    terminal_time: float
    termination: Termination

    @property
    def bounce_count(self) -> int:
        return len(self.events)


def rolling_impact(s: BallState, surf: Surface, p: BallParams) -> ImpactOutcome:
    """Dispatch to the cheapest applicable rolling reset."""
    if isinstance(surf, Plane):
        tb = surf.table
        if tb.u == 0.0:
            return rolling_reset_flat(s, tb, p)
        if tb.stationary:
            return rolling_reset(s, surf, p)
        return impact_equation_solve(s, surf, p)
    return rolling_reset(s, surf, p)


def _event_table(surf: Surface, s: BallState, p: BallParams) -> TableConfig:
    if isinstance(surf, Plane):
        return surf.table
    # record the local tangent frame of the curved surface at contact
    phi = local_contact_frame(s, surf)
    return TableConfig(u=phi, v=rotate_frame(s, phi).y - p.R)


def _finish(arcs, events, terminal, termination) -> HybridTrajectory:
    return HybridTrajectory(
        arcs=tuple(arcs),
        events=tuple(events),
        terminal=terminal,
        terminal_time=terminal.t,
        termination=termination,
    )


def _fly_to_apex(s: BallState, p: BallParams, arcs: list) -> BallState:
    dt = s.vy / p.g if s.vy > 0.0 else 0.0
    if dt > 0.0:
        end = propagate(s, dt, p)
        arcs.append(FlightArc(s, dt, end))
        return end
    return s


def run_schedule(
    s0: BallState,
    sched: ControlSchedule,
    p: BallParams,
    mode: TerminalMode = Apex(),
    t_min: float = DEFAULT_T_MIN,
) -> HybridTrajectory:
    """Execute a per-bounce schedule of table placements.

    In Apex mode the run ends at the first post-final-bounce apex
    (a start at rest with no bounces ends immediately).  In FixedTime
    mode the run ends at the requested absolute time; an impact that
    would exceed the bounce budget terminates the run with a ZenoGuard
    flag at the impact instant instead.
    """
    arcs: list[FlightArc] = []
    events: list[ImpactEvent] = []
    s = s0
    entries = sched.entries
    if entries and guard_value(s, Plane(entries[0]), p) >= 0.0:
        return _finish(arcs, events, s, Termination.INFEASIBLE_PLACEMENT)

    T = mode.T if isinstance(mode, FixedTime) else math.inf
    ran_out_of_impacts = False
    k = 0
    while k < sched.max_bounces:
        surf = Plane(entries[k])
        t_star = time_to_impact(s, surf, p, t_min)
        if t_star is None:
            ran_out_of_impacts = True
            break
        if s.t + t_star > T:
            break
        pre = propagate(s, t_star, p)
        arcs.append(FlightArc(s, t_star, pre))
        try:
            outcome = rolling_impact(pre, surf, p)
        except ImpactError:
            return _finish(arcs, events, pre, Termination.INFEASIBLE_PLACEMENT)
        events.append(ImpactEvent(pre=pre, outcome=outcome, table=entries[k]))
        s = outcome.post
        k += 1
        if k < sched.max_bounces and guard_value(s, Plane(entries[k]), p) >= 0.0:
            return _finish(arcs, events, s, Termination.INFEASIBLE_PLACEMENT)

    if isinstance(mode, Apex):
        s = _fly_to_apex(s, p, arcs)
        term = (
            Termination.NO_MORE_IMPACTS if ran_out_of_impacts else Termination.APEX_REACHED
        )
        return _finish(arcs, events, s, term)

    # FixedTime: fly out the clock against the last active table
    rest_surf = Plane(entries[min(k, len(entries) - 1)]) if entries else None
    if rest_surf is not None and not ran_out_of_impacts:
        t_star = time_to_impact(s, rest_surf, p, t_min)
        if t_star is not None and s.t + t_star < T and k >= sched.max_bounces:
            pre = propagate(s, t_star, p)
            arcs.append(FlightArc(s, t_star, pre))
            return _finish(arcs, events, pre, Termination.ZENO_GUARD)
    dt = T - s.t
    if dt > 0.0:
        end = propagate(s, dt, p)
        arcs.append(FlightArc(s, dt, end))
        s = end
    return _finish(arcs, events, s, Termination.TIME_REACHED)


def run_surface(
    s0: BallState,
    surf: Surface,
    p: BallParams,
    T: float = math.inf,
    max_bounces: int = 100,
    law: str = "rolling",
    t_min: float = DEFAULT_T_MIN,
    zeno_limit: int = 3,
) -> HybridTrajectory:
    """Bounce against one fixed surface until time T or the bounce cap.

    ``law`` selects the reset: "rolling" (default) or "slippery".
    Three consecutive inter-impact times below t_min terminate the run
    with a ZenoGuard flag.
    """
    if law not in ("rolling", "slippery"):
        raise ValueError(f"unknown impact law {law!r}")
    if guard_value(s0, surf, p) >= 0.0:
        return _finish([], [], s0, Termination.INFEASIBLE_PLACEMENT)
    arcs: list[FlightArc] = []
    events: list[ImpactEvent] = []
    s = s0
    short_streak = 0
    while len(events) < max_bounces:
        t_star = time_to_impact(s, surf, p, t_min)
        if t_star is None:
            if math.isfinite(T) and T > s.t:
                end = propagate(s, T - s.t, p)
                arcs.append(FlightArc(s, T - s.t, end))
                s = end
                return _finish(arcs, events, s, Termination.TIME_REACHED)
            return _finish(arcs, events, s, Termination.NO_MORE_IMPACTS)
        if s.t + t_star > T:
            dt = T - s.t
            end = propagate(s, dt, p)
            arcs.append(FlightArc(s, dt, end))
            return _finish(arcs, events, end, Termination.TIME_REACHED)
        pre = propagate(s, t_star, p)
        arcs.append(FlightArc(s, t_star, pre))
        try:
            if law == "rolling":
                outcome = rolling_impact(pre, surf, p)
            else:
                outcome = slippery_reset(pre, surf, p)
        except ImpactError:
            return _finish(arcs, events, pre, Termination.INFEASIBLE_PLACEMENT)
        events.append(ImpactEvent(pre=pre, outcome=outcome, table=_event_table(surf, pre, p)))
        s = outcome.post
        short_streak = short_streak + 1 if t_star < t_min else 0
        if short_streak >= zeno_limit:
            return _finish(arcs, events, s, Termination.ZENO_GUARD)
    return _finish(arcs, events, s, Termination.NO_MORE_IMPACTS)


def trajectory_to_csv(
    traj: HybridTrajectory, p: BallParams, samples_per_arc: int = 32
) -> str:
    """Flatten a trajectory to CSV rows (t,x,y,theta,vx,vy,omega,phase).

    Each flight arc is sampled uniformly; impacts contribute a pre and a
    post row at the impact instant.  Floats are written as shortest
    round-trip decimals.
    """
    out = io.StringIO()
    out.write("t,x,y,theta,vx,vy,omega,phase\n")

    def row(s: BallState, phase: str) -> None:
        out.write(
            f"{s.t!r},{s.x!r},{s.y!r},{s.theta!r},{s.vx!r},{s.vy!r},{s.omega!r},{phase}\n"
        )

    for k, arc in enumerate(traj.arcs):
        for frac in np.linspace(0.0, 1.0, samples_per_arc):
            row(propagate(arc.start, float(frac) * arc.duration, p), f"flight_{k}")
    for k, ev in enumerate(traj.events):
        row(ev.pre, f"impact_{k}")
        row(ev.outcome.post, f"impact_{k}")
    return out.getvalue()
