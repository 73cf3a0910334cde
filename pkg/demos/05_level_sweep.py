#!/usr/bin/env python3
"""Sweep the second step's desired level and track the side effects.

For each swept level a fresh two-step session runs per method; D measures
how far the first controlled point moved, J the RMS pattern deviation
between the two steps.  The optimal selection should dominate both metrics
at every level.
"""
from pathlib import Path

from beamctl import load_experiment_config, run_sweep

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

config = load_experiment_config("experiment1")
rows = run_sweep(config)

levels = sorted({row["rho_db"] for row in rows})
table = {(row["rho_db"], row["method"]): row for row in rows}

print("second-step level sweep, study 1 (D in dB / J):")
print(f"{'rho2 (dB)':>9s} | {'a2rc':>22s} | {'parc':>22s} | {'oparc':>22s}")
for level in levels[::10]:
    cells = []
    for method in ("a2rc", "parc", "oparc"):
        row = table[(level, method)]
        cells.append(f"{row['d_db']:8.4f} / {row['j_rms']:.3e}")
    print(f"{level:9.1f} | " + " | ".join(f"{c:>22s}" for c in cells))

dominated = all(
    table[(lv, "oparc")]["d_db"] <= min(table[(lv, "a2rc")]["d_db"], table[(lv, "parc")]["d_db"])
    and table[(lv, "oparc")]["j_rms"] <= min(table[(lv, "a2rc")]["j_rms"], table[(lv, "parc")]["j_rms"])
    for lv in levels
)
print(f"\noptimal engine dominates D and J at every swept level: {dominated}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for method, color in (("a2rc", "tab:orange"), ("parc", "tab:green"),
                          ("oparc", "tab:blue")):
        axes[0].plot(levels, [table[(lv, method)]["d_db"] for lv in levels],
                     label=method, color=color)
        axes[1].semilogy(levels, [table[(lv, method)]["j_rms"] for lv in levels],
                         label=method, color=color)
    axes[0].set(xlabel="second-step level (dB)", ylabel="D (dB)",
                title="perturbation at the first point")
    axes[1].set(xlabel="second-step level (dB)", ylabel="J",
                title="RMS pattern deviation")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(OUT / "level_sweep.png", dpi=120)
    print(f"wrote {OUT / 'level_sweep.png'}")
except ImportError:
    print("matplotlib not available; skipped the plot")
