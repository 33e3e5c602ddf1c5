"""Momentum map, mechanical connection, and conservation audits.

The disk's rotational symmetry group acts by shifting theta.  The
induced momentum map is J = I*omega, the locked inertia tensor is the
scalar I, and the mechanical connection is A = omega.  Both are
constant along flight arcs; the audit records how they jump (or fail
to) across resets.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .executor import HybridTrajectory
from .model import BallParams, BallState

__all__ = [
    "SymmetryReport",
    "momentum_map",
    "mechanical_connection",
    "audit_trajectory",
    "report_to_csv",
]


def momentum_map(s: BallState, p: BallParams) -> float:
    """Angular momentum conjugate to the rotation symmetry: I*omega."""
    return p.I * s.omega


def mechanical_connection(s: BallState, p: BallParams) -> float:
    """Locked-inertia-normalized momentum: omega itself for the disk."""
    return momentum_map(s, p) / p.I


@dataclass(frozen=True, slots=True)
class SymmetryReport:
    """Momentum/connection values along a trajectory's events.

    J_series and A_series hold the initial value followed by the
    post-reset value at each event (length = events + 1); event_rows
    carry (index, t, J_pre, J_post, A_pre, A_post) for export.
    """

    J_series: tuple[float, ...]
    A_series: tuple[float, ...]
    max_jump_J: float
    max_jump_A: float
    event_rows: tuple[tuple[int, float, float, float, float, float], ...]


def audit_trajectory(traj: HybridTrajectory, p: BallParams) -> SymmetryReport:
    start = traj.arcs[0].start if traj.arcs else traj.terminal
    J_series = [momentum_map(start, p)]
    A_series = [mechanical_connection(start, p)]
    rows = []
    max_jj = 0.0
    max_ja = 0.0
    for k, ev in enumerate(traj.events):
        j_pre = momentum_map(ev.pre, p)
        j_post = momentum_map(ev.outcome.post, p)
        a_pre = mechanical_connection(ev.pre, p)
        a_post = mechanical_connection(ev.outcome.post, p)
        J_series.append(j_post)
        A_series.append(a_post)
        rows.append((k, ev.pre.t, j_pre, j_post, a_pre, a_post))
        max_jj = max(max_jj, abs(j_post - j_pre))
        max_ja = max(max_ja, abs(a_post - a_pre))
    return SymmetryReport(
        J_series=tuple(J_series),
        A_series=tuple(A_series),
        max_jump_J=max_jj,
        max_jump_A=max_ja,
        event_rows=tuple(rows),
    )


def report_to_csv(report: SymmetryReport) -> str:
    out = io.StringIO()
    out.write("event_index,t,J_pre,J_post,A_pre,A_post\n")
    for idx, t, jp, jq, ap, aq in report.event_rows:
        out.write(f"{idx},{t!r},{jp!r},{jq!r},{ap!r},{aq!r}\n")
    return out.getvalue()
