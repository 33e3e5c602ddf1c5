"""Anatomy of one rolling impact on a tilted table.

The post-impact state is fixed by five conditions: two impulse-balance
equations along the table normal and tangent, the spin impulse from the
tangential friction force, exact energy conservation (the table is
stationary), and the rolling constraint that the contact point comes to
rest.  The solver reports the two impulse multipliers: epsilon scales
the normal impulse and lam the tangential one.

Two quantities are worth watching across the jump:

* the spin angular momentum I*omega jumps by exactly lam*R -- this is
  how a tilted, constrained impact pumps or drains spin;
* p_theta - R*(p_x cos u + p_y sin u) never jumps, whatever the tilt.
"""

import math

from impact_lab import (
    BallState,
    Plane,
    TableConfig,
    energy,
    momenta,
    momentum_map,
    rolling_reset,
    uniform_disk,
)

p = uniform_disk()
u = 0.4  # table tilt in radians

# place the disk exactly on the tilted guard, falling straight down
x, y = 0.2, 0.6
v = y * math.cos(u) - x * math.sin(u) - p.R
s = BallState(x=x, y=y, theta=0.0, vx=0.0, vy=-3.0, omega=0.0)
out = rolling_reset(s, Plane(TableConfig(u=u, v=v)), p)

print(f"pre : vx={s.vx:+.5f}  vy={s.vy:+.5f}  omega={s.omega:+.5f}")
print(f"post: vx={out.post.vx:+.5f}  vy={out.post.vy:+.5f}  omega={out.post.omega:+.5f}")
print(f"multipliers: epsilon={out.epsilon:+.6f}  lam={out.lam:+.6f}")

dJ = momentum_map(out.post, p) - momentum_map(s, p)
print(f"\nspin momentum jump  dJ = {dJ:+.6e}   (lam*R = {out.lam * p.R:+.6e})")


def invariant(state):
    px, py, pt = momenta(state, p)
    return pt - p.R * (px * math.cos(u) + py * math.sin(u))


print(f"conserved combination: pre={invariant(s):+.6e}  post={invariant(out.post):+.6e}")
print(
    f"energy: pre={energy(s, p).total:.8f}  post={energy(out.post, p).total:.8f}"
    f"  (delta={out.energy_delta:+.2e})"
)

# the rolling constraint holds at the contact point after the impact
residual = p.R * out.post.omega + out.post.vx * math.cos(u) + out.post.vy * math.sin(u)
print(f"rolling residual R*omega + v.tangent = {residual:+.2e}")
