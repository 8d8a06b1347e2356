# %% [markdown]
# # Capacity curves
#
# Sweeps the number of trained memories and counts how many come back
# exactly from their active sites. ``TRIALS`` trades noise for time; the
# acceptance suite uses 30.

# %%
import os
from pathlib import Path

from recall_lab import ExperimentConfig, Levels, Rule, run_capacity_sweep, write_curve

TRIALS = int(os.environ.get("TRIALS", "10"))
OUT = Path(os.environ.get("OUT_DIR", "curves"))
OUT.mkdir(exist_ok=True)

figures = {
    "fig1_widrow_hoff_n12": dict(n=12, rule=Rule.WIDROW_HOFF),
    "fig2_delta_n16": dict(n=16),
    "fig3_delta_n32": dict(n=32),
    "fig4_quaternary_n16": dict(n=16, levels=Levels.QUATERNARY),
    "fig5_quaternary_n32": dict(n=32, levels=Levels.QUATERNARY),
    "fig6_quaternary_n16_s2": dict(n=16, levels=Levels.QUATERNARY, sites_per_memory=2),
    "fig7_quaternary_n16_s3": dict(n=16, levels=Levels.QUATERNARY, sites_per_memory=3),
    "hebbian_n16": dict(n=16, rule=Rule.HEBBIAN),
}

curves = {}
for name, kw in figures.items():
    cfg = ExperimentConfig(trials=TRIALS, memory_range=(1, kw["n"]), **kw)
    curves[name] = run_capacity_sweep(cfg)
    write_curve(curves[name], OUT / f"{name}.csv")
    peak = curves[name].peak()
    print(f"{name:26s} peak {peak.mean_retrieved:5.2f} at M={peak.trained}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4))
    for name, curve in curves.items():
        ax.plot([p.trained for p in curve.points], curve.means(), marker=".", label=name)
    ax.set_xlabel("memories trained")
    ax.set_ylabel("memories retrieved (mean)")
    ax.legend(fontsize=7)
    fig.savefig(OUT / "capacity.png", dpi=120, bbox_inches="tight")
