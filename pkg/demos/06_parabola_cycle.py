"""Bounce inside a parabola until a periodic pattern takes over.

Dropped off-center into a parabolic bowl, a rolling disk does not
wander forever: the impact-to-impact map contracts toward an attracting
period-2 cycle (alternating left and right bounces).  The study grades
that contraction two ways -- a geometric-decay fit to the distances
between states one period apart, and the spectral radius of a
finite-difference Jacobian of the period map restricted to the energy
level set.  The slippery law, which never touches the spin, is
neutrally stable by comparison: its ratio sits at 1.
"""

import os

from impact_lab import (
    BallState,
    Parabola,
    limit_cycle_study,
    render_trajectory_svg,
    run_surface,
    uniform_disk,
)

p = uniform_disk()
s0 = BallState(x=0.3, y=1.0, theta=0.0, vx=0.0, vy=0.0, omega=0.0)

report = limit_cycle_study(0.5, s0, p, n_impacts=400)
print(f"rolling law: period {report.period} cycle, converged={report.converged}")
print(f"  section distance first below 1e-8 at impact {report.converged_at}")
print(f"  contraction per period: ratio fit {report.spectral_radius_estimate:.4f},")
print(f"                          jacobian  {report.spectral_radius_jacobian:.4f}")
for k, s in enumerate(report.period_states):
    print(f"  cycle state {k}: x={s.x:+.5f}  vx={s.vx:+.5f}  omega={s.omega:+.5f}")

slip = limit_cycle_study(0.5, s0, p, n_impacts=400, law="slippery")
print(f"\nslippery law: ratio {slip.spectral_radius_estimate:.4f} (neutral, no attractor)")

out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)
traj = run_surface(s0, Parabola(0.5), p, max_bounces=60)
svg = os.path.join(out_dir, "parabola_cycle.svg")
render_trajectory_svg(traj, p, svg, surface=Parabola(0.5), color_by_omega=True)
print(f"wrote {svg} (first 60 bounces, colored by spin)")
