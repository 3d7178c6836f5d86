"""Acceptance gate: one test per numbered criterion.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail
line per criterion. Criterion 8 needs an external dataset and is
skipped unless CYCLETIMES_DATASET_DIR points at it (see README).
"""

import os
import time

import numpy as np
import pytest

from cycletimes import (
    DelayParams,
    NoRecurrenceFound,
    RecurrenceMatrixMode,
    TimeSeries,
    bottleneck_distance,
    detect,
    evaluate_run,
    format_report_table,
    mae,
    mare,
    method1_surrogate,
    method2_surrogate,
    method3_surrogate,
    read_series_csv,
    sublevel_persistence,
    truth_from_sidecar,
)
from cycletimes.detector import RecurrenceResult
from cycletimes.synthetic import LabeledSeries, ScenarioSpec, benchmark_suite, generate

from oracles import naive_lag_averages, sweep_persistence


def random_values(rng, n):
    """Scalar sequences with deliberate ties mixed in."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return rng.integers(0, 8, size=n).astype(float)
    if kind == 1:
        return np.round(rng.normal(size=n), 1)
    return rng.normal(size=n)


def perturb(rng, x, eta):
    """Add noise with per-sample Euclidean norm at most eta."""
    noise = rng.uniform(-1, 1, size=x.values.shape)
    norms = np.linalg.norm(noise, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    noise *= (eta * rng.uniform(0, 1, size=(x.n, 1))) / norms
    return TimeSeries(x.timestamps, x.values + noise)


def circle_two_cycles(n=201):
    t = np.linspace(0.0, 2.0, n)
    xy = np.column_stack([np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)])
    return TimeSeries(t, xy)


def figure_eight(n=201):
    t = np.linspace(0.0, 1.0, n)
    xy = np.column_stack([np.sin(2 * np.pi * t), np.sin(4 * np.pi * t)])
    return TimeSeries(t, xy)


def test_criterion_1_persistence_matches_sweep_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(9001)
    for trial in range(500):
        n = int(rng.integers(1, 201))
        values = random_values(rng, n)
        got = sorted(
            (p.birth, p.death, p.min_index)
            for p in sublevel_persistence(values).points
        )
        assert got == sweep_persistence(values), f"trial {trial}"
    assert time.perf_counter() - start < 10.0


def test_criterion_2_diagram_stability_bound():
    rng = np.random.default_rng(9002)
    for trial in range(200):
        n = int(rng.integers(2, 150))
        f = random_values(rng, n)
        scale = 10.0 ** rng.uniform(-3, 0)
        g = f + rng.uniform(-scale, scale, size=n)
        sup = float(np.max(np.abs(f - g)))
        d = bottleneck_distance(
            sublevel_persistence(f), sublevel_persistence(g)
        )
        assert d <= sup + 1e-9, f"trial {trial}: {d} > {sup}"


def test_criterion_3_surrogate_stability_suite():
    rng = np.random.default_rng(9003)
    for trial in range(100):
        n = int(rng.integers(16, 513))
        m = int(rng.integers(1, 5))
        t = np.linspace(0.0, rng.uniform(1.0, 10.0), n)
        x = TimeSeries(t, rng.normal(size=(n, m)))
        eta = rng.uniform(0.005, 0.1)
        y = perturb(rng, x, eta)
        sup = float(
            np.max(np.linalg.norm(x.values - y.values, axis=1))
        )
        assert sup <= eta + 1e-12

        # method 1: sample-wise and diagram-level bound 2 eta
        v1x, v1y = method1_surrogate(x), method1_surrogate(y)
        assert np.max(np.abs(v1x.values - v1y.values)) <= 2 * sup + 1e-9
        d1 = bottleneck_distance(
            sublevel_persistence(v1x), sublevel_persistence(v1y)
        )
        assert d1 <= 2 * eta + 1e-9, f"trial {trial}"

        # recurrence field w: |w - w'| <= 2 eta at every pair
        diffs_x = np.linalg.norm(
            x.values[None, :, :] - x.values[:, None, :], axis=2
        )
        diffs_y = np.linalg.norm(
            y.values[None, :, :] - y.values[:, None, :], axis=2
        )
        assert np.max(np.abs(diffs_x - diffs_y)) <= 2 * sup + 1e-9

        # method 2 with a grid-aligned delay, p = 2: bound 2 sqrt(d) eta
        d_embed = int(rng.integers(2, 5))
        max_shift = (n - 2) // (d_embed - 1)
        if max_shift >= 1:
            shift = int(rng.integers(1, max_shift + 1))
            params = DelayParams(d_embed, shift * x.mean_spacing, 2.0)
            v2x, v2y = method2_surrogate(x, params), method2_surrogate(y, params)
            bound = 2.0 * np.sqrt(d_embed) * eta
            assert np.max(np.abs(v2x.values - v2y.values)) <= bound + 1e-9
            d2 = bottleneck_distance(
                sublevel_persistence(v2x), sublevel_persistence(v2y)
            )
            assert d2 <= bound + 1e-9, f"trial {trial}"

        # method 3 exact mode: bound 2 eta
        mode = RecurrenceMatrixMode("exact_distance")
        v3x, v3y = method3_surrogate(x, mode), method3_surrogate(y, mode)
        assert np.max(np.abs(v3x.values - v3y.values)) <= 2 * sup + 1e-9
        d3 = bottleneck_distance(
            sublevel_persistence(v3x), sublevel_persistence(v3y)
        )
        assert d3 <= 2 * eta + 1e-9, f"trial {trial}"


def test_criterion_4_fast_path_equivalence_and_scaling():
    rng = np.random.default_rng(9004)
    fast = RecurrenceMatrixMode("squared_fast")
    for trial in range(50):
        n = int(rng.integers(2, 513))
        m = int(rng.integers(1, 4))
        t = np.linspace(0.0, 1.0, n)
        x = TimeSeries(t, rng.normal(size=(n, m)) * rng.uniform(0.1, 10.0))
        got = method3_surrogate(x, fast).values
        want = naive_lag_averages(x.values, squared=True)
        scale = max(1.0, float(np.max(want)))
        assert np.max(np.abs(got - want)) <= 1e-8 * scale, f"trial {trial}"

    # doubling n should cost well under the 4x of a quadratic method
    def median_time(n):
        t = np.linspace(0.0, 1.0, n)
        x = TimeSeries(t, rng.normal(size=(n, 2)))
        method3_surrogate(x, fast)  # warm-up
        times = []
        for _ in range(5):
            tic = time.perf_counter()
            method3_surrogate(x, fast)
            times.append(time.perf_counter() - tic)
        return float(np.median(times))

    ratio = median_time(2 ** 17) / median_time(2 ** 16)
    assert ratio < 3.0, f"doubling n scaled time by {ratio:.2f}"


def test_criterion_5_analytic_recovery():
    circle = circle_two_cycles(201)
    spacing = circle.mean_spacing
    for method, params, eps, delta in [
        (1, None, 0.3, 0.6),
        (3, RecurrenceMatrixMode("exact_distance"), 0.7, 0.1),
    ]:
        result = detect(circle, method=method, epsilon=eps, delta=delta,
                        params=params)
        assert result.k == 2
        for tau in result.cycle_lengths:
            assert abs(tau - 1.0) <= spacing + 1e-12

    eight = figure_eight(201)
    split = detect(eight, method=1, epsilon=0.3, delta=0.6)
    assert split.recurrence_times == pytest.approx((0.0, 0.5, 1.0), abs=1e-9)

    embedded = detect(eight, method=2, epsilon=0.3, delta=0.6,
                      params=DelayParams(2, 0.05))
    assert embedded.k == 1
    assert embedded.recurrence_times == pytest.approx((0.0, 1.0), abs=1e-9)


def test_criterion_6_benchmark_round_trip():
    start = time.perf_counter()
    sections = benchmark_suite()
    assert len(sections) == 18
    for sec in sections:
        labeled = generate(sec.spec, sec.seed)
        result = detect(
            labeled.series, method=sec.method,
            epsilon=sec.epsilon, delta=sec.delta, params=sec.method_params,
        )
        assert result.k == len(labeled.true_lengths), sec.name
        score = mare(labeled.true_lengths, result.cycle_lengths)
        limit = 0.02 if sec.spec.noise_amplitude > 0 else 0.005
        assert score < limit, f"{sec.name}: MARE {score:.4f}"

        # method 3 cannot segment warped repetitions: every repetitive
        # section must come out with the wrong cycle count (table dash)
        if sec.spec.behavior == "repetitive":
            try:
                r3 = detect(
                    labeled.series, method=3, epsilon=0.05, delta=1.0,
                    params=RecurrenceMatrixMode("squared_fast"),
                )
                assert r3.k != len(labeled.true_lengths), sec.name
            except NoRecurrenceFound:
                pass
    assert time.perf_counter() - start < 60.0


def test_criterion_7_metric_formulas():
    assert mae((10.0, 10.0, 10.0), (9.0, 11.0, 10.0)) == 2.0 / 3.0
    assert mae((10.0, 10.0, 10.0), (10.0, 10.0, 10.0)) == 0.0
    assert mare((10.0, 10.0, 10.0), (9.0, 11.0, 10.0)) == \
        (abs(10.0 - 9.0) / 10.0 + abs(10.0 - 11.0) / 10.0 + 0.0) / 3.0
    assert mare((10.0, 20.0), (11.0, 18.0)) == 0.1
    assert mare((10.0, 20.0), (10.0, 20.0)) == 0.0

    # a section scored to exactly 23.35 samples survives the report layer
    # unchanged; 4 + 23.35 and its difference are both exact in binary
    est_len = 4.0 + 23.35
    labeled = _plain_truth((0.0, 4.0))
    result = _plain_result((0.0, est_len))
    report = evaluate_run([(labeled, result)], ["I.1"])
    score = report.per_section["I.1"]
    assert score.mae_samples == 23.35
    assert "23.35" in format_report_table(report)
    assert report.to_dict()["per_section"]["I.1"]["mae_samples"] == 23.35


def _plain_truth(true_times):
    spec = ScenarioSpec(
        behavior="periodic", base_curve="circle", cycles=len(true_times) - 1,
        base_period=(true_times[-1] - true_times[0]) / (len(true_times) - 1),
        samples_per_cycle=2,
    )
    n = 5
    t = np.linspace(true_times[0], true_times[-1], n)
    lengths = tuple(
        b - a for a, b in zip(true_times, true_times[1:])
    )
    return LabeledSeries(
        series=TimeSeries(t, np.zeros((n, 1))),
        true_times=tuple(true_times),
        true_lengths=lengths,
        spec=spec,
        seed=0,
    )


def _plain_result(times):
    diagram = sublevel_persistence([0.0, 1.0, 0.0])
    return RecurrenceResult(
        recurrence_times=tuple(times), method=1,
        params={"epsilon": 0.3, "delta": 0.6}, diagram=diagram,
    )


def test_criterion_8_reference_dataset_reproduction():
    root = os.environ.get("CYCLETIMES_DATASET_DIR")
    if not root:
        pytest.skip(
            "optional: set CYCLETIMES_DATASET_DIR to a directory with "
            "I.1.csv and I.1.truth.json to score the reference recordings"
        )
    import json

    series = read_series_csv(os.path.join(root, "I.1.csv"))
    with open(os.path.join(root, "I.1.truth.json")) as f:
        labeled = truth_from_sidecar(json.load(f))
    result = detect(series, method=1, epsilon=0.3, delta=0.6)
    report = evaluate_run([(labeled, result)], ["I.1"])
    score = report.per_section["I.1"]
    assert score.matched, "cycle count mismatch on I.1"
    assert abs(score.mae_samples - 23.35) <= 0.2 * 23.35
