#!/usr/bin/env python3
"""Quiescent beampattern of the bundled 11-element nonuniform array.

Loads the array description, points the beam at 20 degrees with the matched
(quiescent) weight, samples the normalized pattern over [-90, 90] degrees and
prints a few landmark levels.
"""
import math
from pathlib import Path

import numpy as np

from beamctl import load_array_config, sample_pattern
from beamctl.metrics import GridSpec

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

model = load_array_config("table1")
print(f"array: {model.n} elements, wavelength {model.wavelength:.2f} m")
for i, e in enumerate(model.elements[:3]):
    print(f"  element {i + 1}: x = {e.x_m:.2f} m, pattern {e.amp:.2f}*cos({e.scale:.2f}*theta)")
print("  ...")

theta0 = math.radians(20.0)
w0 = model.steering_vector(theta0)
print(f"\nquiescent weight = a(20deg), norm^2 = {np.linalg.norm(w0) ** 2:.4f}")

pattern = sample_pattern(w0, model, theta0, GridSpec())
angles = np.asarray(pattern.angles_deg)
levels = np.asarray(pattern.levels_db)
peak = angles[np.argmax(levels)]
print(f"pattern peak at {peak:+.1f} deg (level {np.max(levels):+.4f} dB)")
for probe in (-45.0, -5.0, 23.0):
    idx = int(np.argmin(np.abs(angles - probe)))
    print(f"level at {probe:+6.1f} deg: {levels[idx]:8.2f} dB")

csv_path = OUT / "quiescent_pattern.csv"
csv_path.write_text("angle_deg,level_db\n" + "\n".join(
    f"{a},{lv}" for a, lv in zip(pattern.angles_deg, pattern.floored_levels())) + "\n")
print(f"\nwrote {csv_path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(angles, np.maximum(levels, -80), lw=1.0)
    ax.axvline(20.0, color="tab:red", ls="--", lw=0.8, label="beam axis")
    ax.set(xlabel="angle (deg)", ylabel="normalized level (dB)",
           title="Quiescent pattern, 11-element nonuniform array", ylim=(-80, 5))
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "quiescent_pattern.png", dpi=120)
    print(f"wrote {OUT / 'quiescent_pattern.png'}")
except ImportError:
    print("matplotlib not available; skipped the plot")
