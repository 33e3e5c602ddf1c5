"""Hybrid execution: schedules, terminal modes, abnormal terminations."""

import math

import pytest

from impact_lab import (
    Apex,
    BallState,
    ControlSchedule,
    FixedTime,
    Parabola,
    Plane,
    TableConfig,
    Termination,
    energy,
    run_schedule,
    run_surface,
    trajectory_to_csv,
    uniform_disk,
)

P = uniform_disk()
REST = BallState(0.0, 1.0, 0.0, 0.0, 0.0, 0.0)


def _schedule(*tables, max_bounces=None):
    entries = tuple(tables)
    return ControlSchedule(entries=entries, max_bounces=max_bounces or len(entries))


def test_zero_bounce_apex_ends_immediately():
    traj = run_schedule(REST, _schedule(), P, Apex())
    assert traj.bounce_count == 0
    assert traj.terminal_time == 0.0
    assert traj.termination is Termination.APEX_REACHED


def test_single_flat_bounce_returns_to_apex():
    traj = run_schedule(REST, _schedule(TableConfig()), P, Apex())
    assert traj.bounce_count == 1
    assert traj.termination is Termination.APEX_REACHED
    # flat rolling bounce from a pure drop keeps all momentum vertical
    assert traj.terminal.vy == pytest.approx(0.0, abs=1e-12)
    assert traj.terminal.y == pytest.approx(1.0, rel=1e-9)
    t_fall = math.sqrt(2.0 * 0.9 / 9.81)
    assert traj.terminal_time == pytest.approx(2.0 * t_fall, rel=1e-9)


def test_schedule_uses_one_entry_per_bounce():
    """The table teleports between bounces; each impact sees its entry."""
    t1 = TableConfig(u=0.3, v=0.0)
    t2 = TableConfig(u=0.0, v=0.0)
    traj = run_schedule(REST, _schedule(t1, t2), P, Apex())
    assert traj.bounce_count == 2
    assert traj.events[0].table == t1
    assert traj.events[1].table == t2


def test_infeasible_first_placement():
    # table sits above the ball from the start
    traj = run_schedule(REST, _schedule(TableConfig(v=2.0)), P, Apex())
    assert traj.termination is Termination.INFEASIBLE_PLACEMENT
    assert traj.bounce_count == 0


def test_infeasible_mid_schedule_placement():
    # second table teleports in above the rebounding ball
    traj = run_schedule(
        REST, _schedule(TableConfig(), TableConfig(v=5.0)), P, Apex()
    )
    assert traj.termination is Termination.INFEASIBLE_PLACEMENT
    assert traj.bounce_count == 1


def test_fixed_time_runs_out_the_clock():
    T = 0.3  # shorter than the fall time to the table
    traj = run_schedule(REST, _schedule(TableConfig()), P, FixedTime(T))
    assert traj.termination is Termination.TIME_REACHED
    assert traj.bounce_count == 0
    assert traj.terminal_time == pytest.approx(T)
    assert traj.terminal.y == pytest.approx(1.0 - 0.5 * 9.81 * T * T)


def test_fixed_time_flags_budget_overflow():
    """An impact due before T but beyond the bounce budget trips the
    runaway-bounce guard instead of silently flying through the table."""
    traj = run_schedule(REST, _schedule(TableConfig()), P, FixedTime(5.0))
    assert traj.termination is Termination.ZENO_GUARD
    assert traj.bounce_count == 1


def test_run_surface_conserves_energy_over_many_bounces():
    traj = run_surface(REST, Plane(TableConfig()), P, max_bounces=100)
    assert traj.bounce_count == 100
    e0 = energy(REST, P).total
    for ev in traj.events:
        assert energy(ev.outcome.post, P).total == pytest.approx(e0, rel=1e-12)


def test_run_surface_slippery_flat_is_periodic():
    traj = run_surface(REST, Plane(TableConfig()), P, max_bounces=5, law="slippery")
    times = [ev.pre.t for ev in traj.events]
    gaps = [b - a for a, b in zip(times, times[1:])]
    assert all(g == pytest.approx(gaps[0], rel=1e-9) for g in gaps)


def test_run_surface_fixed_time_cut():
    traj = run_surface(REST, Plane(TableConfig()), P, T=1.0, max_bounces=100)
    assert traj.termination is Termination.TIME_REACHED
    assert traj.terminal_time == pytest.approx(1.0)


def test_run_surface_rejects_unknown_law():
    with pytest.raises(ValueError):
        run_surface(REST, Plane(TableConfig()), P, law="sticky")


def test_run_surface_infeasible_start():
    below = BallState(0.0, -1.0, 0.0, 0.0, 0.0, 0.0)
    traj = run_surface(below, Plane(TableConfig()), P)
    assert traj.termination is Termination.INFEASIBLE_PLACEMENT


def test_run_surface_parabola_stays_inside():
    traj = run_surface(
        BallState(0.3, 1.0, 0.0, 0.0, 0.0, 0.0), Parabola(0.5), P, max_bounces=50
    )
    assert traj.bounce_count == 50
    for ev in traj.events:
        # impacts happen on the offset parabola
        assert ev.pre.y == pytest.approx(0.5 * ev.pre.x**2 + P.R, abs=1e-8)


def test_schedule_validation():
    with pytest.raises(ValueError):
        ControlSchedule(entries=(), max_bounces=2)
    with pytest.raises(ValueError):
        ControlSchedule(entries=(), max_bounces=-1)


def test_trajectory_csv_format():
    traj = run_schedule(REST, _schedule(TableConfig()), P, Apex())
    text = trajectory_to_csv(traj, P, samples_per_arc=4)
    lines = text.strip().split("\n")
    assert lines[0] == "t,x,y,theta,vx,vy,omega,phase"
    phases = {line.rsplit(",", 1)[1] for line in lines[1:]}
    assert "flight_0" in phases and "impact_0" in phases
    # deterministic: rendering twice gives identical bytes
    assert text == trajectory_to_csv(traj, P, samples_per_arc=4)
