"""Steer the disk's orientation by choosing where to put the table.

Between bounces the table can be repositioned: each control is a pair
(height v, tilt u) seen by the next impact.  Multi-start shooting
searches for the fewest bounces whose control sequence leaves the disk
back at its apex with a requested final orientation theta_f after a
time near T.  Tiny targets need no bounce at all; larger rotations are
bought one rolling impact at a time.
"""

from impact_lab import TargetSpec, solve, uniform_disk

p = uniform_disk()

for theta_f, T in [(0.05, 0.1), (0.8, 0.6), (1.6, 0.9), (2.4, 1.2)]:
    target = TargetSpec(theta_f=theta_f, T=T)
    res = solve(target, p, seed=42)
    if res is None:
        print(f"theta_f={theta_f:4.2f}, T={T:4.2f}:  no schedule found")
        continue
    n = res.bounce_count
    heights = res.controls[:n]
    tilts = res.controls[n:]
    print(
        f"theta_f={theta_f:4.2f}, T={T:4.2f}:  {n} bounce(s), "
        f"error={res.error:.2e}"
    )
    for k, (v, u) in enumerate(zip(heights, tilts)):
        print(f"    bounce {k}: table height v={v:.4f}, tilt u={u:.4f}")
    print(
        f"    terminal: theta={res.terminal.theta:+.4f} at t={res.terminal_time:.4f}"
    )
