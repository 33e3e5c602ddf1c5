"""A moving table does work on the disk.

Against a stationary table the elastic impact conserves energy exactly.
Give the table an upward velocity at the moment of contact and the
impact injects energy; the amount is -epsilon * W, where epsilon is the
normal impulse multiplier and W the table's normal speed at the contact
point.  The classic textbook numbers: unit disk, table rising at 0.5,
incoming vertical momentum -2 -> outgoing +3 and 2.5 units of energy
gained.
"""

from impact_lab import (
    BallParams,
    BallState,
    TableConfig,
    momenta,
    rolling_reset_flat,
    uniform_disk,
)

unit = BallParams(m=1.0, I=1.0, R=1.0)
s = BallState(x=0.0, y=unit.R, theta=0.0, vx=0.0, vy=-2.0, omega=0.0)

for dv in (0.0, 0.25, 0.5, 1.0):
    out = rolling_reset_flat(s, TableConfig(dv=dv), unit)
    py = momenta(out.post, unit)[1]
    print(
        f"table speed dv={dv:4.2f}:  outgoing p_y = {py:+.4f}, "
        f"energy change = {out.energy_delta:+.4f}"
    )

print("\nThe dv=0.5 row is the worked reference case: p_y jumps from -2 to +3")
print("and the reset injects exactly 2.5 units of energy.")

# the same bookkeeping with realistic disk parameters
p = uniform_disk()
s2 = BallState(x=0.0, y=p.R, theta=0.0, vx=1.0, vy=-2.0, omega=5.0)
out = rolling_reset_flat(s2, TableConfig(dv=0.3), p)
print(
    f"\nuniform disk, spinning oblique hit on a rising table: "
    f"energy change = {out.energy_delta:+.5f}"
)
