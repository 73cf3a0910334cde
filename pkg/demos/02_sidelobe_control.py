#!/usr/bin/env python3
"""Two optimal control steps: push -45 deg to -40 dB, then -5 deg to -30 dB.

Walks the engine step by step and prints everything it decides on the way:
the candidate circle, the two intersection candidates, the selected update
coefficient, the equivalent virtual interference power, and the array gain.
"""
import math
from pathlib import Path

import numpy as np

from beamctl import ControlSession, load_array_config
from beamctl.metrics import GridSpec

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

model = load_array_config("table1")
session = ControlSession(model, theta0_deg=20.0, method="oparc")

for theta_deg, rho_db in ((-45.0, -40.0), (-5.0, -30.0)):
    print(f"== step {session.step_count + 1}: force {theta_deg:+.0f} deg to {rho_db:+.0f} dB")
    summary = session.step(theta_deg, rho_db)
    circle = summary["circles"]["gamma"]
    cand = summary["gamma_candidates"]
    print(f"   gamma circle: center ({circle['center'][0]:+.4f}, {circle['center'][1]:+.4f}),"
          f" radius {circle['radius']:.4f}")
    print(f"   candidates: near {cand['a'][0]:+.4f}{cand['a'][1]:+.4f}j,"
          f" far {cand['b'][0]:+.4f}{cand['b'][1]:+.4f}j, side indicator {cand['zeta']:+.0f}")
    print(f"   selected gamma = {summary['gamma'][0]:+.4f}{summary['gamma'][1]:+.4f}j")
    print(f"   interference power beta = {summary['beta']:+.4f}"
          f" (circle on the real axis: left {summary['beta_candidates']['l']:+.4f},"
          f" right {summary['beta_candidates']['r']:+.4f})")
    print(f"   achieved level {summary['achieved_level_db']:+.6f} dB,"
          f" array gain {summary['gain_db']:.4f} dB")
    if summary["metrics"]["d_db"] is not None:
        print(f"   perturbation at the previous point: {summary['metrics']['d_db']:.4f} dB;"
          f" pattern RMS shift {summary['metrics']['j_rms']:.3e}")
    print()

pattern = session.pattern(GridSpec())
angles = np.asarray(pattern.angles_deg)
levels = np.asarray(pattern.levels_db)
for probe in (-45.0, -5.0):
    idx = int(np.argmin(np.abs(angles - probe)))
    print(f"final pattern at {probe:+6.1f} deg: {levels[idx]:8.4f} dB")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(angles, np.maximum(levels, -80), lw=1.0, label="after step 2")
    ax.scatter([-45, -5], [-40, -30], color="tab:red", zorder=3, s=24,
               label="prescribed levels")
    ax.set(xlabel="angle (deg)", ylabel="normalized level (dB)",
           title="Sequential sidelobe control (optimal selection)", ylim=(-80, 5))
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "sidelobe_control.png", dpi=120)
    print(f"\nwrote {OUT / 'sidelobe_control.png'}")
except ImportError:
    print("\nmatplotlib not available; skipped the plot")
