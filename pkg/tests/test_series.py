import math

import numpy as np
import pytest

from cycletimes import (
    TimeSeries,
    ScalarSeries,
    euclidean_norm,
    p_norm,
    interpolate_at,
    resample_uniform,
)


def test_timeseries_rejects_bad_input():
    with pytest.raises(ValueError):
        TimeSeries([0.0, 0.0, 1.0], np.zeros((3, 1)))  # duplicate timestamps
    with pytest.raises(ValueError):
        TimeSeries([0.0, 1.0, 0.5], np.zeros((3, 1)))
    with pytest.raises(ValueError):
        TimeSeries([0.0], np.zeros((1, 1)))
    with pytest.raises(ValueError):
        TimeSeries([0.0, 1.0], np.array([[0.0], [np.nan]]))
    with pytest.raises(ValueError):
        TimeSeries([0.0, np.inf], np.zeros((2, 1)))
    with pytest.raises(ValueError):
        TimeSeries([0.0, 1.0, 2.0], np.zeros((2, 1)))  # length mismatch


def test_timeseries_accepts_1d_values_as_single_coordinate():
    ts = TimeSeries([0.0, 1.0, 2.0], [5.0, 6.0, 7.0])
    assert ts.m == 1
    assert ts.values.shape == (3, 1)


def test_timeseries_is_immutable():
    ts = TimeSeries([0.0, 1.0], np.zeros((2, 2)))
    with pytest.raises(ValueError):
        ts.values[0, 0] = 1.0


def test_scalarseries_rejects_negative_values():
    with pytest.raises(ValueError):
        ScalarSeries([0.0, 1.0], [0.0, -1.0])


def test_euclidean_norm_examples():
    assert euclidean_norm([3.0, 4.0]) == 5.0
    assert euclidean_norm([0.0, 0.0, 0.0]) == 0.0
    assert euclidean_norm([1.0, 1.0]) == pytest.approx(math.sqrt(2), abs=1e-15)
    with pytest.raises(ValueError):
        euclidean_norm([1.0, np.nan])


def test_p_norm_examples():
    assert p_norm([1.0, -1.0], 1) == 2.0
    assert p_norm([1.0, -1.0], np.inf) == 1.0
    assert p_norm([3.0, 4.0], 2) == 5.0
    with pytest.raises(ValueError):
        p_norm([1.0, 2.0], 0.5)


def test_p_norm_nonincreasing_in_p():
    rng = np.random.default_rng(0)
    for _ in range(50):
        v = rng.normal(size=rng.integers(1, 8))
        ps = [1.0, 1.5, 2.0, 3.0, 10.0, np.inf]
        norms = [p_norm(v, p) for p in ps]
        assert all(a >= b - 1e-12 for a, b in zip(norms, norms[1:]))


def test_euclidean_norm_triangle_inequality():
    rng = np.random.default_rng(1)
    for _ in range(100):
        a = rng.normal(size=4)
        b = rng.normal(size=4)
        assert euclidean_norm(a + b) <= euclidean_norm(a) + euclidean_norm(b) + 1e-12


def test_interpolate_midpoint_and_knots():
    ts = TimeSeries([0.0, 1.0], [[0.0], [2.0]])
    assert interpolate_at(ts, 0.5) == pytest.approx([1.0], abs=0)

    ts2 = TimeSeries([0.0, 2.0], [[0.0, 0.0], [4.0, -2.0]])
    np.testing.assert_allclose(interpolate_at(ts2, 0.5), [1.0, -0.5])

    rng = np.random.default_rng(2)
    t = np.cumsum(rng.uniform(0.1, 1.0, size=20))
    v = rng.normal(size=(20, 3))
    ts3 = TimeSeries(t, v)
    for j in [0, 5, 19]:
        np.testing.assert_array_equal(interpolate_at(ts3, t[j]), v[j])


def test_interpolate_outside_domain_raises():
    ts = TimeSeries([0.0, 1.0], [[0.0], [1.0]])
    with pytest.raises(ValueError):
        interpolate_at(ts, -0.5)
    with pytest.raises(ValueError):
        interpolate_at(ts, 1.5)


def test_resample_uniform_grid():
    ts = TimeSeries([0.0, 1.0, 4.0], [[0.0], [1.0], [4.0]])
    out = resample_uniform(ts, 5)
    np.testing.assert_allclose(out.timestamps, [0, 1, 2, 3, 4], atol=1e-12)


def test_resample_uniform_idempotent_on_uniform_input():
    rng = np.random.default_rng(3)
    t = np.linspace(0.0, 7.0, 71)
    v = rng.normal(size=(71, 2))
    ts = TimeSeries(t, v)
    out = resample_uniform(ts, 71)
    np.testing.assert_allclose(out.values, v, atol=1e-12)
    np.testing.assert_allclose(out.timestamps, t, atol=1e-12)


def test_resample_uniform_output_equispaced_on_jittered_input():
    rng = np.random.default_rng(4)
    t = np.sort(rng.uniform(0.0, 10.0, size=40))
    t[0], t[-1] = 0.0, 10.0
    ts = TimeSeries(t, rng.normal(size=(40, 2)))
    out = resample_uniform(ts, 33)
    dt = np.diff(out.timestamps)
    assert np.max(np.abs(dt - dt.mean())) < 1e-12 * 10.0
    assert out.is_uniform


def test_resample_requires_two_points():
    ts = TimeSeries([0.0, 1.0], [[0.0], [1.0]])
    with pytest.raises(ValueError):
        resample_uniform(ts, 1)
