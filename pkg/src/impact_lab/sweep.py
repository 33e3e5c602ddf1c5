"""Polar controllability sweep over target angle and target time.

Every (theta_f, T) grid cell first runs an independent shooting search;
the per-cell random stream is derived from the cell's row-major index,
so this phase is byte-identical no matter how many workers evaluate the
grid.  A deterministic continuation phase then revisits unsolved cells,
warm-starting the local refinement from adjacent solved cells' control
vectors: solutions vary continuously along the spiral-shaped solvable
bands, so a neighbor's schedule lands inside the narrow valley that
independent random restarts almost always miss.  The continuation runs
in a fixed cell order on the phase-one output, so the final CSV is
still reproducible bit-for-bit from the seed alone.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import BallParams
from .shooting import ShootingResult, SolverConfig, TargetSpec, refine, search

__all__ = ["SweepGrid", "SweepCell", "run_sweep", "sweep_to_csv"]


@dataclass(frozen=True, slots=True)
class SweepGrid:
    theta_min: float = 0.0
    theta_max: float = 2.0 * math.pi
    n_theta: int = 100
    T_min: float = 0.1
    T_max: float = 1.5
    n_T: int = 40

    def __post_init__(self) -> None:
        if self.n_theta < 1 or self.n_T < 1:
            raise ValueError("grid resolutions must be >= 1")
        if self.theta_max < self.theta_min or self.T_max < self.T_min:
            raise ValueError("grid ranges must be nonempty")

    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.n_theta)

    def times(self) -> np.ndarray:
        return np.linspace(self.T_min, self.T_max, self.n_T)


@dataclass(frozen=True, slots=True)
class SweepCell:
    theta_f: float
    T: float
    bounces: int  # -1 when no candidate met the error threshold
    error: float
    controls: tuple[float, ...]  # flattened [h_1..h_n, u_1..u_n]


def _solve_cell(
    idx: int,
    theta_f: float,
    T: float,
    p: BallParams,
    cfg: SolverConfig,
    seed: int,
) -> SweepCell:
    target = TargetSpec(theta_f=theta_f, T=T)
    accepted, best = search(target, p, cfg, seed, stream=idx)
    chosen: Optional[ShootingResult] = accepted if accepted is not None else best
    bounces = accepted.bounce_count if accepted is not None else -1
    return SweepCell(
        theta_f=theta_f,
        T=T,
        bounces=bounces,
        error=chosen.error if chosen is not None else math.inf,
        controls=chosen.controls if chosen is not None else (),
    )


def _warm_candidates(nb: SweepCell, max_bounces: int) -> list[tuple[int, list[float]]]:
    """Starting vectors derived from a solved neighbor, fewest bounces first.

    Besides the neighbor's own schedule, one table is dropped or a
    ground-level flat table appended: cells near the edge of a bounce
    band often need one bounce fewer or one more than their neighbor.
    """
    n = nb.bounces
    heights, angles = list(nb.controls[:n]), list(nb.controls[n:])
    cands: list[tuple[int, list[float]]] = []
    if n > 1:
        cands.append((n - 1, heights[:-1] + angles[:-1]))
    if n >= 1:
        cands.append((n, heights + angles))
    if 1 <= n < max_bounces:
        cands.append((n + 1, heights + [0.0] + angles + [0.0]))
    return cands


def _continuation_pass(
    cells: list[SweepCell], grid: SweepGrid, p: BallParams, cfg: SolverConfig
) -> bool:
    """One sweep over unsolved cells, warm-starting from solved neighbors.

    Cells are visited in row-major order and candidate starts in a fixed
    neighbor order, so the result depends only on the incoming cell list.
    Returns True when at least one cell was newly solved.
    """
    n_T = grid.n_T
    changed = False
    for idx, cell in enumerate(cells):
        if cell.bounces >= 0:
            continue
        i, j = divmod(idx, n_T)
        neighbor_ids = [
            idx - n_T if i > 0 else -1,
            idx + n_T if i < grid.n_theta - 1 else -1,
            idx - 1 if j > 0 else -1,
            idx + 1 if j < n_T - 1 else -1,
        ]
        starts: list[tuple[int, list[float]]] = []
        for nid in neighbor_ids:
            if nid >= 0 and cells[nid].bounces > 0:
                starts.extend(_warm_candidates(cells[nid], cfg.max_bounces))
        if not starts:
            continue
        starts.sort(key=lambda s: s[0])
        target = TargetSpec(theta_f=cell.theta_f, T=cell.T)
        for n, vec in starts:
            refined, err = refine(vec, n, target, p, cfg)
            if err <= cfg.epsilon:
                cells[idx] = SweepCell(
                    theta_f=cell.theta_f,
                    T=cell.T,
                    bounces=n,
                    error=err,
                    controls=refined,
                )
                changed = True
                break
    return changed


def run_sweep(
    grid: SweepGrid,
    p: BallParams,
    seed: int,
    cfg: SolverConfig = SolverConfig(),
    threads: int = 1,
    continuation_passes: int = 8,
) -> list[SweepCell]:
    """Evaluate the grid; output order is row-major (theta outer)."""
    jobs = []
    idx = 0
    for theta_f in grid.thetas():
        for T in grid.times():
            jobs.append((idx, float(theta_f), float(T)))
            idx += 1
    if threads <= 1:
        cells = [_solve_cell(i, th, T, p, cfg, seed) for i, th, T in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_solve_cell, i, th, T, p, cfg, seed) for i, th, T in jobs
            ]
            cells = [f.result() for f in futures]
    for _ in range(continuation_passes):
        if not _continuation_pass(cells, grid, p, cfg):
            break
    return cells


def sweep_to_csv(cells: list[SweepCell]) -> str:
    out = io.StringIO()
    out.write("theta_f,T,bounces,error,controls\n")
    for c in cells:
        n = len(c.controls) // 2
        pairs = ";".join(
            f"{c.controls[n + k]!r}:{c.controls[k]!r}" for k in range(n)
        )
        out.write(f"{c.theta_f!r},{c.T!r},{c.bounces},{c.error!r},{pairs}\n")
    return out.getvalue()
