"""Drop a spinning disk onto a flat table and watch the two impact laws.

The slippery law reflects the normal velocity and leaves the spin
untouched, so a pure drop just bounces in place forever.  The rolling
law couples spin and horizontal motion at the instant of contact: a
disk dropped with backspin walks sideways, trading spin for horizontal
momentum at every bounce while total energy stays exactly constant.
"""

from impact_lab import (
    BallState,
    Plane,
    TableConfig,
    energy,
    run_surface,
    uniform_disk,
)

p = uniform_disk()
s0 = BallState(x=0.0, y=1.0, theta=0.0, vx=0.0, vy=0.0, omega=20.0)
table = Plane(TableConfig())

for law in ("slippery", "rolling"):
    traj = run_surface(s0, table, p, max_bounces=8, law=law)
    print(f"\n{law} law, 8 bounces from a drop with omega=20:")
    print(f"  {'k':>2}  {'t':>8}  {'x':>9}  {'vx_post':>9}  {'omega_post':>10}  {'E':>10}")
    for k, ev in enumerate(traj.events):
        post = ev.outcome.post
        print(
            f"  {k:>2}  {post.t:8.4f}  {post.x:9.5f}  {post.vx:9.5f}"
            f"  {post.omega:10.5f}  {energy(post, p).total:10.6f}"
        )

print("\nUnder the rolling law the contact point is brought to rest at each")
print("impact, so the walk obeys dx = -R * dtheta between flat bounces.")
