"""Command-line front end for the experiments.

Subcommands:

* ``simulate``    one trajectory against a configured surface -> CSV + SVG
* ``solve``       one shooting target -> JSON record
* ``sweep``       controllability grid -> CSV + polar SVGs
* ``limit-cycle`` parabola bounce study -> CSV + report + colored SVG
* ``audit``       symmetry (momentum/connection) report -> CSV

Exit codes: 0 success, 1 usage error, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .config import ConfigError, get_float, get_int, get_str, load_config
from .cycles import limit_cycle_study, section_distance
from .executor import run_surface, trajectory_to_csv
from .model import BallParams, BallState, Parabola, Plane, Surface, TableConfig
from .shooting import SolverConfig, TargetSpec, solve as shooting_solve
from .svgplot import render_polar_svg, render_trajectory_svg
from .sweep import SweepGrid, run_sweep, sweep_to_csv
from .symmetry import audit_trajectory, report_to_csv

__all__ = ["main", "entry"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _ball_params(cfg: dict[str, str]) -> BallParams:
    m = get_float(cfg, "ball.m", 1.0)
    R = get_float(cfg, "ball.R", 0.1)
    return BallParams(
        m=m,
        R=R,
        I=get_float(cfg, "ball.I", 0.5 * m * R * R),
        g=get_float(cfg, "ball.g", 9.81),
    )


def _initial_state(cfg: dict[str, str]) -> BallState:
    return BallState(
        x=get_float(cfg, "state.x", 0.0),
        y=get_float(cfg, "state.y", 1.0),
        theta=get_float(cfg, "state.theta", 0.0),
        vx=get_float(cfg, "state.vx", 0.0),
        vy=get_float(cfg, "state.vy", 0.0),
        omega=get_float(cfg, "state.omega", 0.0),
    )


def _surface(cfg: dict[str, str]) -> Surface:
    kind = get_str(cfg, "surface.kind", "plane")
    if kind == "plane":
        return Plane(
            TableConfig(
                u=get_float(cfg, "surface.u", 0.0),
                v=get_float(cfg, "surface.v", 0.0),
                du=get_float(cfg, "surface.du", 0.0),
                dv=get_float(cfg, "surface.dv", 0.0),
            )
        )
    if kind == "parabola":
        return Parabola(alpha=get_float(cfg, "surface.alpha", 0.5))
    raise ConfigError(f"surface.kind must be 'plane' or 'parabola', got {kind!r}")


def _solver_config(cfg: dict[str, str], mode: str) -> SolverConfig:
    return SolverConfig(
        restarts=get_int(cfg, "solver.restarts", 10),
        epsilon=get_float(cfg, "solver.epsilon", 1e-2),
        max_iters=get_int(cfg, "solver.max_iters", 200),
        max_bounces=get_int(cfg, "solver.max_bounces", 5),
        terminal_mode=mode,
    )


def _out_path(out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _cmd_simulate(args, cfg) -> int:
    p = _ball_params(cfg)
    surf = _surface(cfg)
    traj = run_surface(
        _initial_state(cfg),
        surf,
        p,
        T=get_float(cfg, "sim.T", 3.0),
        max_bounces=get_int(cfg, "sim.max_bounces", 20),
        law=get_str(cfg, "sim.law", "rolling"),
    )
    csv_path = _out_path(args.out, "trajectory.csv")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(trajectory_to_csv(traj, p))
    render_trajectory_svg(traj, p, _out_path(args.out, "trajectory.svg"), surface=surf)
    print(
        f"simulate: {traj.bounce_count} bounces, termination={traj.termination.value}, "
        f"wrote {csv_path}"
    )
    return 0


def _cmd_solve(args, cfg) -> int:
    p = _ball_params(cfg)
    target = TargetSpec(
        theta_f=get_float(cfg, "target.theta_f", 0.05),
        T=get_float(cfg, "target.T", 0.1),
        x0=get_float(cfg, "target.x0", 0.0),
        y0=get_float(cfg, "target.y0", 1.0),
        theta0=get_float(cfg, "target.theta0", 0.0),
    )
    scfg = _solver_config(cfg, args.mode)
    result = shooting_solve(target, p, scfg, seed=args.seed)
    record = {
        "theta_f": target.theta_f,
        "T": target.T,
        "seed": args.seed,
        "solved": result is not None,
    }
    if result is not None:
        record.update(
            bounces=result.bounce_count,
            error=result.error,
            controls=list(result.controls),
            terminal={
                "x": result.terminal.x,
                "y": result.terminal.y,
                "theta": result.terminal.theta,
                "t": result.terminal_time,
            },
        )
    text = json.dumps(record, indent=2, sort_keys=True)
    print(text)
    with open(_out_path(args.out, "solve.json"), "w", newline="\n") as fh:
        fh.write(text + "\n")
    return 0


def _cmd_sweep(args, cfg) -> int:
    p = _ball_params(cfg)
    grid = SweepGrid(
        theta_min=get_float(cfg, "sweep.theta_min", 0.0),
        theta_max=get_float(cfg, "sweep.theta_max", 2.0 * math.pi),
        n_theta=get_int(cfg, "sweep.n_theta", 100),
        T_min=get_float(cfg, "sweep.T_min", 0.1),
        T_max=get_float(cfg, "sweep.T_max", 1.5),
        n_T=get_int(cfg, "sweep.n_T", 40),
    )
    cells = run_sweep(grid, p, args.seed, _solver_config(cfg, args.mode), threads=args.threads)
    csv_path = _out_path(args.out, "sweep.csv")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(sweep_to_csv(cells))
    render_polar_svg(cells, _out_path(args.out, "controllability.svg"))
    render_polar_svg(cells, _out_path(args.out, "failure.svg"), failure_only=True)
    solved = sum(1 for c in cells if c.bounces >= 0)
    print(f"sweep: {solved}/{len(cells)} cells solved, wrote {csv_path}")
    return 0


def _cmd_limit_cycle(args, cfg) -> int:
    p = _ball_params(cfg)
    alpha = get_float(cfg, "cycle.alpha", 0.5)
    s0 = BallState(
        x=get_float(cfg, "cycle.x0", 0.3),
        y=get_float(cfg, "cycle.y0", 1.0),
        theta=0.0,
        vx=0.0,
        vy=0.0,
        omega=0.0,
    )
    n_impacts = get_int(cfg, "cycle.n_impacts", 200)
    report = limit_cycle_study(alpha, s0, p, n_impacts=n_impacts)
    traj = run_surface(s0, Parabola(alpha), p, max_bounces=n_impacts)
    posts = [ev.outcome.post for ev in traj.events]
    csv_path = _out_path(args.out, "cycle.csv")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write("k,t,x,vx,vy,omega,section_distance\n")
        for k, s in enumerate(posts):
            d = section_distance(s, posts[k - 1], p) if k else float("nan")
            fh.write(f"{k},{s.t!r},{s.x!r},{s.vx!r},{s.vy!r},{s.omega!r},{d!r}\n")
    render_trajectory_svg(
        traj, p, _out_path(args.out, "cycle.svg"), surface=Parabola(alpha), color_by_omega=True
    )
    print(
        f"limit-cycle: converged={report.converged}, "
        f"spectral_radius={report.spectral_radius_estimate:.6g} "
        f"(jacobian {report.spectral_radius_jacobian:.6g}), wrote {csv_path}"
    )
    return 0


def _cmd_audit(args, cfg) -> int:
    p = _ball_params(cfg)
    surf = _surface(cfg)
    traj = run_surface(
        _initial_state(cfg),
        surf,
        p,
        T=get_float(cfg, "sim.T", 3.0),
        max_bounces=get_int(cfg, "sim.max_bounces", 20),
        law=get_str(cfg, "sim.law", "rolling"),
    )
    report = audit_trajectory(traj, p)
    csv_path = _out_path(args.out, "audit.csv")
    with open(csv_path, "w", newline="\n") as fh:
        fh.write(report_to_csv(report))
    print(
        f"audit: {len(report.event_rows)} events, max |dJ|={report.max_jump_J:.3e}, "
        f"wrote {csv_path}"
    )
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "limit-cycle": _cmd_limit_cycle,
    "audit": _cmd_audit,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="impact-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", default=None, help="path to key = value config file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--mode", choices=("apex", "fixed-time"), default="apex")
        sp.add_argument("--threads", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"impact-lab: error: {exc}", file=sys.stderr)
        return 1
    if args.threads is None:
        args.threads = int(os.environ.get("IMPACT_LAB_THREADS", "1"))
    try:
        cfg = load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, cfg)
    except (ConfigError, ValueError) as exc:
        print(f"impact-lab: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"impact-lab: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
