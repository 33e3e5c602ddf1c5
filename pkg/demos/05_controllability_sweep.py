"""Map which (orientation, time) targets the impact controls can reach.

Each cell of a polar grid -- angle theta_f, radius T -- gets its own
shooting search.  Cells the solver cracks are colored by bounce count;
cells it cannot are left as failures.  The sweep is deterministic for a
given seed (including across thread counts), so the CSV doubles as a
regression artifact.

This demo runs a coarse grid so it finishes in well under a minute; the
full-resolution map is the `impact-lab sweep` subcommand's job.
"""

import os

from impact_lab import SweepGrid, render_polar_svg, run_sweep, sweep_to_csv, uniform_disk

p = uniform_disk()
grid = SweepGrid(theta_min=0.0, theta_max=3.0, n_theta=6, T_min=0.1, T_max=1.0, n_T=4)

cells = run_sweep(grid, p, seed=7)
solved = [c for c in cells if c.bounces >= 0]
print(f"solved {len(solved)}/{len(cells)} cells")
print(f"{'theta_f':>8}  {'T':>5}  {'bounces':>7}  {'error':>9}")
for c in cells:
    b = str(c.bounces) if c.bounces >= 0 else "-"
    print(f"{c.theta_f:8.3f}  {c.T:5.2f}  {b:>7}  {c.error:9.2e}")

out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)
csv_path = os.path.join(out_dir, "sweep_demo.csv")
with open(csv_path, "w", newline="\n") as fh:
    fh.write(sweep_to_csv(cells))
render_polar_svg(cells, os.path.join(out_dir, "sweep_demo.svg"))
print(f"\nwrote {csv_path} and sweep_demo.svg")
