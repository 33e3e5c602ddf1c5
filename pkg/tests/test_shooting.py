"""Multi-start shooting: deterministic randomness, error law, search."""

import math

import pytest

from impact_lab import (
    ErrorWeights,
    SolverConfig,
    SplitMix64,
    TargetSpec,
    derive_seed,
    error_function,
    refine,
    solve,
    uniform_disk,
)
from impact_lab.shooting import (
    ABNORMAL_PENALTY,
    _sample_vector,
    schedule_from_vector,
    simulate_controls,
)

P = uniform_disk()


# --- deterministic randomness ----------------------------------------------

def test_splitmix64_reference_value():
    """First output of the well-known 64-bit mixer from seed 0."""
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_splitmix64_uniform_range():
    rng = SplitMix64(123)
    xs = [rng.uniform(2.0, 3.0) for _ in range(1000)]
    assert all(2.0 <= x < 3.0 for x in xs)
    assert 2.4 < sum(xs) / len(xs) < 2.6


def test_derive_seed_is_order_sensitive_and_stable():
    assert derive_seed(42, 1, 2, 3) == derive_seed(42, 1, 2, 3)
    assert derive_seed(42, 1, 2, 3) != derive_seed(42, 3, 2, 1)
    assert derive_seed(42, 0, 0, 0) != derive_seed(43, 0, 0, 0)


def test_sample_vector_bounds_and_descending_heights():
    cfg = SolverConfig()
    rng = SplitMix64(5)
    vec = _sample_vector(rng, 4, cfg)
    heights, angles = vec[:4], vec[4:]
    assert all(0.0 <= h <= 1.0 for h in heights)
    assert all(0.0 <= a <= math.pi for a in angles)
    assert heights == sorted(heights, reverse=True)


# --- error law ---------------------------------------------------------------

def test_zero_bounce_error_small_target():
    """Doing nothing against a tiny target is already acceptable."""
    target = TargetSpec(theta_f=0.05, T=0.1)
    traj = simulate_controls([], 0, target, P, SolverConfig())
    e = error_function(traj, target)
    assert e == pytest.approx(50 * 0.05**4 + 5 * 0.1**4, rel=1e-12)
    assert e <= 1e-2


def test_zero_bounce_error_long_target():
    """A long time horizon rules the null control out."""
    target = TargetSpec(theta_f=0.05, T=1.5)
    traj = simulate_controls([], 0, target, P, SolverConfig())
    assert error_function(traj, target) == pytest.approx(
        50 * 0.05**4 + 5 * 1.5**4, rel=1e-12
    )


def test_abnormal_termination_is_penalized():
    target = TargetSpec(theta_f=0.0, T=0.5)
    # table above the ball: infeasible before the first bounce
    traj = simulate_controls([2.0, 0.0], 1, target, P, SolverConfig())
    assert error_function(traj, target) == ABNORMAL_PENALTY


def test_error_weights_validation():
    with pytest.raises(ValueError):
        ErrorWeights(a=(1.0, -1.0, 50.0, 5.0))


def test_target_requires_positive_time():
    with pytest.raises(ValueError):
        TargetSpec(theta_f=0.0, T=0.0)


# --- control plumbing --------------------------------------------------------

def test_schedule_from_vector_layout():
    sched = schedule_from_vector([0.4, 0.2, 1.0, 2.0], 2)
    assert sched.max_bounces == 2
    assert sched.entries[0].v == 0.4 and sched.entries[0].u == 1.0
    assert sched.entries[1].v == 0.2 and sched.entries[1].u == 2.0
    with pytest.raises(ValueError):
        schedule_from_vector([0.4], 1)


# --- refinement --------------------------------------------------------------

def test_refine_never_worsens_the_start():
    cfg = SolverConfig()
    target = TargetSpec(theta_f=0.3, T=0.9)
    start = [0.5, 1.0]
    traj = simulate_controls(start, 1, target, P, cfg)
    e0 = error_function(traj, target)
    _, e1 = refine(start, 1, target, P, cfg)
    assert e1 <= e0


def test_refine_clamps_into_the_box():
    cfg = SolverConfig()
    target = TargetSpec(theta_f=0.1, T=0.5)
    vec, _ = refine([5.0, -3.0], 1, target, P, cfg)
    assert 0.0 <= vec[0] <= 1.0
    assert 0.0 <= vec[1] <= math.pi


def test_refine_escapes_an_infeasible_start():
    """An initial table above the ball is graded, not a dead end."""
    cfg = SolverConfig()
    target = TargetSpec(theta_f=0.0, T=0.87)  # a flat drop-bounce solves this
    vec, err = refine([1.0, 0.0], 1, target, P, cfg)
    assert err < ABNORMAL_PENALTY


def test_refine_is_deterministic():
    cfg = SolverConfig()
    target = TargetSpec(theta_f=0.4, T=0.8)
    a = refine([0.3, 0.7], 1, target, P, cfg)
    b = refine([0.3, 0.7], 1, target, P, cfg)
    assert a == b


# --- full searches -----------------------------------------------------------

def test_solve_prefers_zero_bounces_inside_wedge():
    res = solve(TargetSpec(theta_f=0.05, T=0.1), P, seed=0)
    assert res is not None
    assert res.bounce_count == 0
    assert res.error == pytest.approx(50 * 0.05**4 + 5 * 0.1**4, rel=1e-12)


def test_solve_must_bounce_for_long_times():
    res = solve(TargetSpec(theta_f=0.05, T=1.5), P, seed=0)
    if res is not None:
        assert res.bounce_count >= 1
        assert res.error <= 1e-2


def test_solution_reSimulates_to_recorded_error():
    cfg = SolverConfig()
    target = TargetSpec(theta_f=0.6, T=0.9)
    res = solve(target, P, cfg, seed=3)
    assert res is not None
    traj = simulate_controls(res.controls, res.bounce_count, target, P, cfg)
    assert error_function(traj, target, cfg.weights) == pytest.approx(
        res.error, abs=1e-12
    )


def test_solve_is_reproducible_from_the_seed():
    target = TargetSpec(theta_f=0.9, T=0.7)
    a = solve(target, P, seed=11)
    b = solve(target, P, seed=11)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.controls == b.controls and a.error == b.error
