"""Multi-start shooting for the intermittent-contact control problem.

Given a target change of orientation and a target time, search for a
per-bounce sequence of table heights and tilts that flies the disk from
rest back to its start point with the desired final angle.  For each
candidate bounce count the control vector is seeded uniformly at random
(heights in [0, 1], tilts in [0, pi]) and polished by a derivative-free
simplex descent; among all candidates under the error threshold, the
one with the fewest bounces wins.

Randomness comes from a fixed 64-bit mixing generator (splitmix64) so
results are reproducible bit-for-bit from the seed alone, independent
of evaluation order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .executor import (
    Apex,
    ControlSchedule,
    FixedTime,
    HybridTrajectory,
    Termination,
    run_schedule,
)
from .model import BallParams, BallState, Plane, TableConfig, guard_value

__all__ = [
    "TargetSpec",
    "ErrorWeights",
    "SolverConfig",
    "ShootingResult",
    "SplitMix64",
    "derive_seed",
    "error_function",
    "refine",
    "solve",
    "search",
    "simulate_controls",
    "schedule_from_vector",
    "ABNORMAL_PENALTY",
]

ABNORMAL_PENALTY = 1e6

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64: additive counter plus a 64-bit avalanche mix."""

    def __init__(self, seed: int) -> None:
        self._s = seed & _MASK

    def next_u64(self) -> int:
        self._s = (self._s + _GOLDEN) & _MASK
        z = self._s
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * ((self.next_u64() >> 11) * 2.0**-53)


def derive_seed(master: int, *salts: int) -> int:
    """Mix salts into a master seed; order-sensitive, collision-mixed."""
    s = master & _MASK
    for k in salts:
        s = SplitMix64(s ^ ((k * _GOLDEN) & _MASK)).next_u64()
    return s


@dataclass(frozen=True, slots=True)
class TargetSpec:
    """Boundary data: leave (x0, y0, theta0) at rest, return to
    (x0, y0) with angle theta_f at time T."""

    theta_f: float
    T: float
    x0: float = 0.0
    y0: float = 1.0
    theta0: float = 0.0

    def __post_init__(self) -> None:
        if not (self.T > 0):
            raise ValueError("target time T must be positive")


@dataclass(frozen=True, slots=True)
class ErrorWeights:
    """Diagonal weights on [(dx)^2, (dy)^2, (dtheta)^2, (dT)^2]."""

    a: tuple[float, float, float, float] = (1.0, 1.0, 50.0, 5.0)

    def __post_init__(self) -> None:
        if len(self.a) != 4 or any(w < 0 for w in self.a):
            raise ValueError("weights must be 4 nonnegative entries")


@dataclass(frozen=True, slots=True)
class SolverConfig:
    restarts: int = 10
    epsilon: float = 1e-2
    max_iters: int = 200
    rounds: int = 3  # fresh-simplex descents chained per restart
    max_bounces: int = 5
    terminal_mode: str = "apex"  # "apex" | "fixed-time"
    height_range: tuple[float, float] = (0.0, 1.0)
    angle_range: tuple[float, float] = (0.0, math.pi)
    weights: ErrorWeights = ErrorWeights()

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not (self.epsilon > 0):
            raise ValueError("epsilon must be positive")
        if self.terminal_mode not in ("apex", "fixed-time"):
            raise ValueError("terminal_mode must be 'apex' or 'fixed-time'")


@dataclass(frozen=True, slots=True)
class ShootingResult:
    schedule: ControlSchedule
    bounce_count: int
    error: float
    terminal: BallState
    terminal_time: float
    seed: int
    controls: tuple[float, ...]  # [h_1..h_n, u_1..u_n], clamped


def error_function(
    traj: HybridTrajectory, target: TargetSpec, w: ErrorWeights = ErrorWeights()
) -> float:
    """Weighted sum over the squared entries of the boundary mismatch.

    The mismatch vector q already holds squared differences, so the
    result is a weighted sum of fourth powers.  Trajectories that ended
    abnormally (infeasible placement, Zeno guard) get a flat penalty.
    """
    if traj.termination in (
        Termination.INFEASIBLE_PLACEMENT,
        Termination.ZENO_GUARD,
    ):
        return ABNORMAL_PENALTY
    q = (
        (traj.terminal.x - target.x0) ** 2,
        (traj.terminal.y - target.y0) ** 2,
        (traj.terminal.theta - target.theta_f) ** 2,
        (traj.terminal_time - target.T) ** 2,
    )
    return sum(wi * qi * qi for wi, qi in zip(w.a, q))


def schedule_from_vector(
    vec: Sequence[float], n: int
) -> ControlSchedule:
    """Controls [h_1..h_n, u_1..u_n] -> per-bounce table placements."""
    if len(vec) != 2 * n:
        raise ValueError("control vector must have length 2n")
    entries = tuple(
        TableConfig(u=vec[n + k], v=vec[k]) for k in range(n)
    )
    return ControlSchedule(entries=entries, max_bounces=n)


def simulate_controls(
    vec: Sequence[float],
    n: int,
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig,
) -> HybridTrajectory:
    s0 = BallState(target.x0, target.y0, target.theta0, 0.0, 0.0, 0.0, 0.0)
    mode = Apex() if cfg.terminal_mode == "apex" else FixedTime(target.T)
    return run_schedule(s0, schedule_from_vector(vec, n), p, mode)


def _clamp(vec: list[float], n: int, cfg: SolverConfig) -> list[float]:
    lo_h, hi_h = cfg.height_range
    lo_a, hi_a = cfg.angle_range
    out = list(vec)
    for k in range(n):
        out[k] = min(max(out[k], lo_h), hi_h)
        out[n + k] = min(max(out[n + k], lo_a), hi_a)
    return out


def _shaped_objective(
    vec: Sequence[float],
    n: int,
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig,
) -> tuple[float, float]:
    """(navigation value, true error) for one control vector.

    The true error is flat at the abnormal-termination penalty, which
    gives the simplex no slope to walk off an infeasible placement.
    The navigation value grades failures by how many bounces completed
    and how deep the ball sat under the offending table, so descent is
    pulled toward feasibility; on feasible controls both values agree.
    """
    traj = simulate_controls(vec, n, target, p, cfg)
    true_err = error_function(traj, target, cfg.weights)
    if traj.termination not in (
        Termination.INFEASIBLE_PLACEMENT,
        Termination.ZENO_GUARD,
    ):
        return true_err, true_err
    k = traj.bounce_count
    depth = 0.0
    if n > 0:
        table = TableConfig(u=vec[n + min(k, n - 1)], v=vec[min(k, n - 1)])
        depth = max(0.0, guard_value(traj.terminal, Plane(table), p))
    shaped = ABNORMAL_PENALTY * (1.0 + (n - k)) + 1e3 * depth
    return shaped, true_err


def refine(
    initial: Sequence[float],
    n: int,
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig,
) -> tuple[tuple[float, ...], float]:
    """Simplex descent on the 2n control parameters.

    Standard reflection/expansion/contraction/shrink coefficients
    (1, 2, 0.5, 0.5); the initial simplex steps each coordinate by
    0.1x its box range; candidates are clamped into the box before
    evaluation.  Each descent stops after cfg.max_iters iterations or
    when the simplex diameter falls below 1e-6; up to cfg.rounds
    descents are chained, each rebuilding a fresh simplex around the
    previous best point to escape premature collapse.  Descent
    navigates a shaped version of the objective (see _shaped_objective)
    but the returned point is the best one visited under the true
    error.  Deterministic.
    """
    best: list = [None, math.inf]  # [vector, true error]

    def f(vec: list[float]) -> float:
        shaped, true_err = _shaped_objective(vec, n, target, p, cfg)
        if true_err < best[1]:
            best[0], best[1] = tuple(vec), true_err
        return shaped

    x0 = _clamp(list(initial), n, cfg)
    if n == 0:
        f(x0)
        return tuple(x0), best[1]

    dim = 2 * n
    steps = [0.1 * (cfg.height_range[1] - cfg.height_range[0])] * n + [
        0.1 * (cfg.angle_range[1] - cfg.angle_range[0])
    ] * n

    def descend(start: list[float]) -> tuple[list[float], float]:
        simplex: list[list[float]] = [start]
        for i in range(dim):
            v = list(start)
            # step away from the nearer box edge so the vertex never
            # clamps back onto the start point (degenerate simplex)
            clamped = _clamp([x + (steps[i] if j == i else 0.0) for j, x in enumerate(start)], n, cfg)
            v[i] = clamped[i] if clamped[i] != start[i] else start[i] - steps[i]
            simplex.append(_clamp(v, n, cfg))
        values = [f(v) for v in simplex]

        for _ in range(cfg.max_iters):
            order = sorted(range(dim + 1), key=lambda i: (values[i], i))
            simplex = [simplex[i] for i in order]
            values = [values[i] for i in order]
            diam = max(
                max(abs(a - b) for a, b in zip(simplex[j], simplex[0]))
                for j in range(1, dim + 1)
            )
            if diam < 1e-6:
                break
            centroid = [
                sum(simplex[j][i] for j in range(dim)) / dim for i in range(dim)
            ]
            worst = simplex[-1]
            refl = _clamp(
                [c + 1.0 * (c - wv) for c, wv in zip(centroid, worst)], n, cfg
            )
            f_refl = f(refl)
            if values[0] <= f_refl < values[-2]:
                simplex[-1], values[-1] = refl, f_refl
                continue
            if f_refl < values[0]:
                expd = _clamp(
                    [c + 2.0 * (c - wv) for c, wv in zip(centroid, worst)], n, cfg
                )
                f_expd = f(expd)
                if f_expd < f_refl:
                    simplex[-1], values[-1] = expd, f_expd
                else:
                    simplex[-1], values[-1] = refl, f_refl
                continue
            contr = _clamp(
                [c + 0.5 * (wv - c) for c, wv in zip(centroid, worst)], n, cfg
            )
            f_contr = f(contr)
            if f_contr < values[-1]:
                simplex[-1], values[-1] = contr, f_contr
                continue
            anchor = simplex[0]
            for j in range(1, dim + 1):
                simplex[j] = _clamp(
                    [b + 0.5 * (v - b) for b, v in zip(anchor, simplex[j])], n, cfg
                )
                values[j] = f(simplex[j])

        i_low = min(range(dim + 1), key=lambda i: (values[i], i))
        return simplex[i_low], values[i_low]

    x, fx = x0, math.inf
    for _ in range(max(1, cfg.rounds)):
        x, fx_new = descend(list(x))
        if best[1] <= cfg.epsilon:
            break  # already good enough; further polish is wasted work
        if fx_new >= ABNORMAL_PENALTY or fx_new >= fx - 1e-12:
            break  # stuck infeasible or no longer improving
        fx = fx_new

    return best[0], best[1]


def _sample_vector(rng: SplitMix64, n: int, cfg: SolverConfig) -> list[float]:
    # heights are sorted tallest-first: a bouncing disk sheds apex
    # height monotonically under an elastic reset, so descending tables
    # are the feasible starts and unordered draws almost never are
    heights = sorted((rng.uniform(*cfg.height_range) for _ in range(n)), reverse=True)
    angles = [rng.uniform(*cfg.angle_range) for _ in range(n)]
    return heights + angles


def _make_result(
    vec: tuple[float, ...],
    n: int,
    err: float,
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig,
    seed: int,
) -> ShootingResult:
    traj = simulate_controls(vec, n, target, p, cfg)
    return ShootingResult(
        schedule=schedule_from_vector(vec, n),
        bounce_count=n,
        error=error_function(traj, target, cfg.weights),
        terminal=traj.terminal,
        terminal_time=traj.terminal_time,
        seed=seed,
        controls=vec,
    )


def search(
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig,
    seed: int,
    stream: int = 0,
) -> tuple[Optional[ShootingResult], Optional[ShootingResult]]:
    """Multi-start search over bounce counts 0..max_bounces.

    Returns (accepted, best_attempt): ``accepted`` is the minimum-bounce
    candidate with error <= epsilon (ties broken by lower error, then
    restart index); ``best_attempt`` is the overall lowest-error
    candidate regardless of acceptance.  Bounce counts are explored in
    ascending order, so the search stops at the first count that
    produces an accepted candidate.
    """
    best_attempt: Optional[tuple[float, int, int, tuple[float, ...]]] = None
    for n in range(cfg.max_bounces + 1):
        accepted: Optional[tuple[float, int, tuple[float, ...]]] = None
        restarts = 1 if n == 0 else cfg.restarts
        for r in range(restarts):
            rng = SplitMix64(derive_seed(seed, stream, n, r))
            x0 = _sample_vector(rng, n, cfg)
            vec, err = refine(x0, n, target, p, cfg)
            if best_attempt is None or (err, n, r) < best_attempt[:3]:
                best_attempt = (err, n, r, vec)
            if err <= cfg.epsilon and (accepted is None or (err, r) < accepted[:2]):
                accepted = (err, r, vec)
        if accepted is not None:
            result = _make_result(accepted[2], n, accepted[0], target, p, cfg, seed)
            return result, result
    assert best_attempt is not None
    fallback = _make_result(
        best_attempt[3], best_attempt[1], best_attempt[0], target, p, cfg, seed
    )
    return None, fallback


def solve(
    target: TargetSpec,
    p: BallParams,
    cfg: SolverConfig = SolverConfig(),
    seed: int = 0,
    stream: int = 0,
) -> Optional[ShootingResult]:
    """Minimum-bounce control schedule hitting the target, if any."""
    accepted, _ = search(target, p, cfg, seed, stream)
    return accepted
