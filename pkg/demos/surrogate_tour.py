# Tour of the three scalar surrogates on one trajectory.
#
# The input is a planar loop traversed three times, each pass at its own
# speed (so the signal is repetitive, not periodic). All three surrogate
# constructions turn it into a scalar function whose deep local minima
# mark the returns; they differ in what they are robust against.
#
# Run from the repository root:  python3 demos/surrogate_tour.py
# Writes surrogate_tour.png next to this script.

from pathlib import Path

import numpy as np

from cycletimes import (
    DelayParams,
    RecurrenceMatrixMode,
    method1_surrogate,
    method2_surrogate,
    method3_surrogate,
    sublevel_persistence,
    significant_points,
)
from cycletimes.synthetic import ScenarioSpec, WarpSpec, generate

spec = ScenarioSpec(
    behavior="repetitive",
    base_curve="circle",
    cycles=3,
    warps=(WarpSpec(stretch=1.0), WarpSpec(stretch=1.4), WarpSpec(stretch=0.8)),
    samples_per_cycle=1000,
)
labeled = generate(spec, seed=21)
x = labeled.series
print(f"trajectory: {x.n} samples, {x.m} dims, span {x.span:.2f} s")
print(f"true recurrence times: {np.round(labeled.true_times, 3)}")

# Method 1: distance to the start state. Cheapest, and exact whenever
# the trajectory only comes near x(0) at true returns.
v1 = method1_surrogate(x)

# Method 2: the same distance in delay-embedded space. A short window of
# the recent past is attached to every state, so two crossings of the
# same point in different directions stop looking alike.
v2 = method2_surrogate(x, DelayParams(embed_dim=2, delay=0.01))

# Method 3: average distance between all pairs of samples a fixed lag
# apart, as a function of the lag. Minima now live on the lag axis, so
# this one sees global periods rather than individual returns.
v3 = method3_surrogate(x, RecurrenceMatrixMode("squared_fast"))

for name, v in [("method 1", v1), ("method 2", v2), ("method 3", v3)]:
    diagram = sublevel_persistence(v)
    deep = significant_points(diagram, epsilon=0.3, delta=0.5)
    where = np.round([v.timestamps[p.min_index] for p in deep], 3)
    print(f"{name}: {len(diagram.points)} minima, significant at {where}")

# The warps move each return to its own place on the time axis, and
# methods 1 and 2 find them there. Method 3 only sees lags: averaging
# over cycles of length 1.0, 1.4 and 0.8 s leaves shallow minima at
# compromise lags near 1.17 and 2.32 s that match no actual cycle.
# This is the structural failure the benchmark's repetitive sections
# exercise; tighten epsilon and method 3 honestly reports nothing.

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, axes = plt.subplots(3, 1, figsize=(8, 7), sharex=False)
for ax, (name, v) in zip(
    axes, [("method 1: v_x", v1), ("method 2: v_x^U", v2), ("method 3: v_x^w", v3)]
):
    ax.plot(v.timestamps, v.values, lw=0.8)
    ax.set_ylabel(name)
axes[0].set_title("three surrogates of the same repetitive trajectory")
axes[1].set_xlabel("time [s]")
axes[2].set_xlabel("lag [s]")
out = Path(__file__).with_name("surrogate_tour.png")
fig.tight_layout()
fig.savefig(out, dpi=120)
print(f"wrote {out}")
