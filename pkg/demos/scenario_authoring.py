# Authoring labeled scenarios, and checking the labels mean something.
#
# Every benchmark series is born from a ScenarioSpec: a base closed
# curve, a cycle count, and the chosen corruption (per-cycle time warps
# for repetitive behavior, per-cycle shape perturbations for recurring
# behavior, optional jittered sampling and noise). The generator returns
# the series together with its ground-truth recurrence times, and the
# validators prove those labels satisfy the behavior definitions rather
# than taking the generator's word for it.
#
# Run from the repository root:  python3 demos/scenario_authoring.py

import json

import numpy as np

from cycletimes.synthetic import (
    PerturbationSpec,
    ScenarioSpec,
    generate,
    validate_periodic,
    validate_recurring,
)

spec = ScenarioSpec(
    behavior="recurring",
    base_curve="lissajous",
    cycles=4,
    perturbations=PerturbationSpec(amplitude=0.25, n_bumps=3),
    noise_amplitude=0.02,
    sampling="jittered",
    jitter_fraction=0.2,
    samples_per_cycle=800,
)

# Specs serialize to plain dicts, so scenario files are just JSON; the
# CLI's generate subcommand reads exactly this document.
doc = spec.to_dict()
print(json.dumps(doc, indent=2)[:400], "...")
assert ScenarioSpec.from_dict(doc) == spec

labeled = generate(spec, seed=11)
x = labeled.series
print(f"\n{x.n} samples over {x.span:.1f} s, uniform grid: {x.is_uniform}")
print("true times:  ", np.round(labeled.true_times, 3))
print("true lengths:", np.round(labeled.true_lengths, 3))

# The recurring validator checks the behavior's structure at sampling
# resolution: the trajectory comes back within eps of the start at each
# labeled time, and between consecutive returns it actually leaves (the
# excursion clears the return distance by more than delta). The labeled
# series carries the margins its own construction guarantees.
eps = labeled.eps_gen
delta = labeled.delta_gen
assert validate_recurring(x, labeled.true_times, eps, delta)
print(f"\nrecurring structure holds with eps={eps:.3f}, delta={delta:.3f}")

# Wrong labels do not pass: shift one interior time by a third of a
# cycle and the dip test finds no return there.
times = list(labeled.true_times)
times[2] += labeled.true_lengths[2] / 3.0
print("mislabeled times accepted?",
      validate_recurring(x, tuple(times), eps, delta))

# Periodic specs get the stronger check: the whole signal must agree
# with its own translate by one period, not just return to the start.
periodic = ScenarioSpec(
    behavior="periodic", base_curve="multisine", cycles=6,
    samples_per_cycle=500, curve_seed=7,
)
plab = generate(periodic, seed=2)
assert validate_periodic(plab.series, tau=1.0, eps=1e-9)
print("periodic translate-invariance holds to 1e-9")
print("but not with the wrong period:",
      validate_periodic(plab.series, tau=1.3, eps=1e-9))
