"""Audit which impact law breaks the rotational symmetry.

The disk's orientation theta never appears in the flight dynamics or in
the guard, so the spin momentum I*omega is conserved by the flow -- and
by the slippery impact law.  The rolling law couples spin to the
translational momenta at contact, so I*omega jumps at every bounce.
The audit walks a trajectory and tabulates those jumps, writing the
same CSV the `impact-lab audit` subcommand emits.
"""

import os

from impact_lab import (
    BallState,
    Plane,
    TableConfig,
    audit_trajectory,
    report_to_csv,
    run_surface,
    uniform_disk,
)

p = uniform_disk()
s0 = BallState(x=0.0, y=1.0, theta=0.0, vx=0.3, vy=0.0, omega=5.0)
table = Plane(TableConfig())

for law in ("slippery", "rolling"):
    traj = run_surface(s0, table, p, max_bounces=10, law=law)
    report = audit_trajectory(traj, p)
    print(f"{law}: max |dJ| over 10 bounces = {report.max_jump_J:.3e}")

traj = run_surface(s0, table, p, max_bounces=10, law="rolling")
out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)
path = os.path.join(out_dir, "audit_demo.csv")
with open(path, "w", newline="\n") as fh:
    fh.write(report_to_csv(audit_trajectory(traj, p)))
print(f"wrote {path}")
