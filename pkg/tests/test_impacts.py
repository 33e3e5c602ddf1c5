"""Elastic reset maps: closed forms, the multiplier solve, and their
cross-checks."""

import math

import pytest

from impact_lab import (
    BallParams,
    BallState,
    NotImpactingError,
    Parabola,
    Plane,
    TableConfig,
    energy,
    guard_rate,
    guard_value,
    impact_equation_solve,
    momenta,
    rolling_reset,
    rolling_reset_flat,
    slippery_reset,
    uniform_disk,
)
from impact_lab.shooting import SplitMix64

UNIT = BallParams(m=1.0, I=1.0, R=1.0, g=9.81)


def _on_flat_guard(p, vx, vy, omega):
    """A state resting on the flat table's guard with given velocities."""
    return BallState(0.0, p.R, 0.0, vx, vy, omega)


def _random_admissible(rng, p, tilt_range=(-1.4, 1.4)):
    """Random state placed exactly on a random stationary tilted table,
    approaching it."""
    while True:
        u = rng.uniform(*tilt_range)
        x = rng.uniform(-1.0, 1.0)
        y = rng.uniform(0.2, 2.0)
        v = y * math.cos(u) - x * math.sin(u) - p.R  # forces h = 0
        s = BallState(x, y, 0.0, rng.uniform(-10, 10), rng.uniform(-10, 10),
                      rng.uniform(-20, 20))
        surf = Plane(TableConfig(u=u, v=v))
        if guard_rate(s, surf, p) > 1e-6:
            return s, surf


# --- flat-table closed form -------------------------------------------------

def test_flat_rolling_worked_example():
    """Unit-parameter reset of momenta (1, -1, 0)."""
    s = _on_flat_guard(UNIT, 1.0, -1.0, 0.0)
    out = rolling_reset_flat(s, TableConfig(), UNIT)
    px, py, pth = momenta(out.post, UNIT)
    assert px == pytest.approx(0.5, abs=1e-12)
    assert py == pytest.approx(math.sqrt(1.5), abs=1e-12)
    assert pth == pytest.approx(-0.5, abs=1e-12)


def test_flat_rolling_post_state_rolls():
    p = uniform_disk()
    s = _on_flat_guard(p, 2.0, -3.0, 7.0)
    out = rolling_reset_flat(s, TableConfig(), p)
    assert p.R * out.post.omega + out.post.vx == pytest.approx(0.0, abs=1e-12)


def test_flat_rolling_conserves_energy_when_stationary():
    p = uniform_disk()
    s = _on_flat_guard(p, 1.3, -2.1, -4.0)
    out = rolling_reset_flat(s, TableConfig(), p)
    assert energy(out.post, p).total == pytest.approx(energy(s, p).total, rel=1e-12)
    assert out.energy_delta == pytest.approx(0.0, abs=1e-12)


def test_moving_table_energy_injection():
    """Rising table (dv = 0.5) against momenta (0, -2, 0): the outgoing
    normal momentum is 3 and the reset injects 2.5 J."""
    s = _on_flat_guard(UNIT, 0.0, -2.0, 0.0)
    out = rolling_reset_flat(s, TableConfig(dv=0.5), UNIT)
    assert momenta(out.post, UNIT)[1] == pytest.approx(3.0, abs=1e-12)
    assert out.energy_delta == pytest.approx(2.5, abs=1e-12)


def test_retreating_table_is_not_an_impact():
    """A table falling away faster than the ball approaches never makes
    contact: the admissibility check rejects it outright."""
    s = _on_flat_guard(UNIT, 0.0, -1.0, 0.0)
    with pytest.raises(NotImpactingError):
        rolling_reset_flat(s, TableConfig(dv=-5.0), UNIT)


def test_flat_reset_requires_contact():
    p = uniform_disk()
    s = BallState(0.0, 1.0, 0.0, 0.0, -1.0, 0.0)  # far above the table
    with pytest.raises(NotImpactingError):
        rolling_reset_flat(s, TableConfig(), p)


def test_flat_reset_requires_approach():
    p = uniform_disk()
    s = _on_flat_guard(p, 0.0, 2.0, 0.0)  # on guard but departing
    with pytest.raises(NotImpactingError):
        rolling_reset_flat(s, TableConfig(), p)


# --- slippery reset ---------------------------------------------------------

def test_slippery_reflects_normal_velocity_only():
    p = uniform_disk()
    s = _on_flat_guard(p, 1.5, -2.0, 9.0)
    out = slippery_reset(s, Plane(TableConfig()), p)
    assert out.post.vx == pytest.approx(1.5)
    assert out.post.vy == pytest.approx(2.0)
    assert out.post.omega == 9.0  # spin passes through untouched
    assert out.lam == 0.0
    # normal (approach) velocity is -vy = 2 on a flat table
    assert out.epsilon == pytest.approx(-2.0 * p.m * 2.0, abs=1e-12)


def test_slippery_is_an_involution():
    p = uniform_disk()
    s = _on_flat_guard(p, 1.0, -3.0, 2.0)
    surf = Plane(TableConfig())
    once = slippery_reset(s, surf, p).post
    twice = slippery_reset(once, surf, p, require_approach=False).post
    assert twice.vx == pytest.approx(s.vx, abs=1e-13)
    assert twice.vy == pytest.approx(s.vy, abs=1e-13)
    assert twice.omega == s.omega


def test_slippery_conserves_energy_on_parabola():
    p = uniform_disk()
    x = 0.6
    s = BallState(x, 0.5 * x * x + p.R, 0.0, 0.5, -2.5, 3.0)
    out = slippery_reset(s, Parabola(0.5), p)
    assert energy(out.post, p).total == pytest.approx(energy(s, p).total, rel=1e-12)


# --- tilted tables: conjugation vs direct multiplier solve ------------------

def test_rolling_reset_matches_equation_solve_on_tilted_tables():
    p = uniform_disk()
    rng = SplitMix64(7)
    for _ in range(400):
        s, surf = _random_admissible(rng, p)
        a = rolling_reset(s, surf, p)
        b = impact_equation_solve(s, surf, p)
        assert a.post.vx == pytest.approx(b.post.vx, abs=1e-10)
        assert a.post.vy == pytest.approx(b.post.vy, abs=1e-10)
        assert a.post.omega == pytest.approx(b.post.omega, abs=1e-10)
        assert a.epsilon == pytest.approx(b.epsilon, abs=1e-10)
        assert a.lam == pytest.approx(b.lam, abs=1e-10)


def test_equation_solve_unconstrained_recovers_slippery():
    p = uniform_disk()
    rng = SplitMix64(11)
    for _ in range(100):
        s, surf = _random_admissible(rng, p)
        a = slippery_reset(s, surf, p)
        b = impact_equation_solve(s, surf, p, constrained=False)
        assert a.post.vx == pytest.approx(b.post.vx, abs=1e-10)
        assert a.post.vy == pytest.approx(b.post.vy, abs=1e-10)
        assert b.lam == 0.0


def test_rolling_reset_satisfies_constraint_at_contact_angle():
    p = uniform_disk()
    rng = SplitMix64(13)
    for _ in range(200):
        s, surf = _random_admissible(rng, p)
        u = surf.table.u
        post = rolling_reset(s, surf, p).post
        resid = p.R * post.omega + post.vx * math.cos(u) + post.vy * math.sin(u)
        assert resid == pytest.approx(0.0, abs=1e-11)


def test_rolling_reset_departs():
    p = uniform_disk()
    rng = SplitMix64(17)
    for _ in range(200):
        s, surf = _random_admissible(rng, p)
        post = rolling_reset(s, surf, p).post
        assert guard_rate(post, surf, p) < 0.0


def test_parabola_rolling_uses_local_tangent():
    p = uniform_disk()
    alpha = 0.5
    x = -0.8
    s = BallState(x, alpha * x * x + p.R, 0.0, 1.0, -2.0, 0.0)
    out = rolling_reset(s, Parabola(alpha), p)
    phi = math.atan(2.0 * alpha * x)
    resid = p.R * out.post.omega + out.post.vx * math.cos(phi) + out.post.vy * math.sin(phi)
    assert resid == pytest.approx(0.0, abs=1e-11)
    assert energy(out.post, p).total == pytest.approx(energy(s, p).total, rel=1e-12)


def test_moving_tilted_table_solves_and_changes_energy():
    p = uniform_disk()
    u = 0.4
    x, y = 0.2, 0.5
    v = y * math.cos(u) - x * math.sin(u) - p.R
    s = BallState(x, y, 0.0, 0.0, -3.0, 0.0)
    surf = Plane(TableConfig(u=u, v=v, du=0.1, dv=0.3))
    out = impact_equation_solve(s, surf, p)
    W = (x * math.cos(u) + y * math.sin(u)) * 0.1 + 0.3
    assert out.energy_delta == pytest.approx(-out.epsilon * W, abs=1e-10)
