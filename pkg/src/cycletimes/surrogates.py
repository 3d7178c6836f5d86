"""Scalar surrogate functions built from a multi-variate time series.

Three constructions, each turning the trajectory into a non-negative
scalar signal whose significant local minima mark recurrence:

1. distance to the starting sample;
2. distance between delay-embedded states and the embedded start, which
   disambiguates self-intersections at the cost of two parameters;
3. the average pairwise distance at each time lag, which detects a
   constant period rather than individual returns.

Method 3 has an O(n log n) variant that averages *squared* distances:
those decompose into two cumulative sums plus one FFT autocorrelation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .series import ScalarSeries, TimeSeries, interpolate_many, resample_uniform

__all__ = [
    "DelayParams",
    "RecurrenceMatrixMode",
    "method1_surrogate",
    "delay_embed",
    "method2_surrogate",
    "method3_surrogate",
    "min_averaged_pairs",
]


@dataclass(frozen=True)
class DelayParams:
    """Delay-embedding parameters: dimension, delay in seconds, and the
    norm order used to compare embedded states (default Euclidean)."""

    embed_dim: int
    delay: float
    norm_p: float = 2.0

    def __post_init__(self):
        if self.embed_dim < 1:
            raise ValueError("embed_dim must be >= 1")
        if not self.delay > 0:
            raise ValueError("delay must be positive")
        if not (self.norm_p >= 1.0):
            raise ValueError("norm_p must be >= 1 or inf")


@dataclass(frozen=True)
class RecurrenceMatrixMode:
    """How to evaluate the lag-average surrogate.

    ``exact_distance`` averages Euclidean distances (O(n^2));
    ``squared_fast`` averages squared distances in O(n log n) and needs a
    uniform time grid. ``resample_n`` requests resampling of non-uniform
    input onto that many equispaced points first.
    """

    mode: str = "exact_distance"
    resample_n: int | None = None

    def __post_init__(self):
        if self.mode not in ("exact_distance", "squared_fast"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.resample_n is not None and self.resample_n < 2:
            raise ValueError("resample_n must be >= 2")


def method1_surrogate(x: TimeSeries) -> ScalarSeries:
    """Distance of every sample to the starting sample; first value is 0."""
    diff = x.values - x.values[0]
    v = np.linalg.norm(diff, axis=1)
    v[0] = 0.0
    return ScalarSeries(x.timestamps, v)


def delay_embed(x: TimeSeries, params: DelayParams) -> TimeSeries:
    """Stack delayed copies of the trajectory into an (m*d)-dimensional one.

    Output keeps the input timestamps t_j that satisfy
    t_j + (d-1)*delay <= t_n; delayed values off the sample grid are
    linearly interpolated. On a uniform grid with a delay that is an
    integer number of samples, values are taken exactly (no
    interpolation).
    """
    d = params.embed_dim
    if d == 1:
        return x
    window = (d - 1) * params.delay
    if not window < x.span:
        raise ValueError(
            f"embedding window (d-1)*delay = {window} must be smaller than "
            f"the series span {x.span}"
        )
    ts = x.timestamps
    tol = 1e-9 * x.mean_spacing
    keep = ts <= ts[-1] - window + tol
    t_out = ts[keep]
    n_out = t_out.size
    if n_out == 0:
        raise ValueError("empty embedding domain")

    out = np.empty((n_out, x.m * d))
    shift = _grid_shift(x, params.delay)
    for i in range(d):
        if shift is not None:
            block = x.values[i * shift : i * shift + n_out]
        else:
            block = interpolate_many(x, t_out + i * params.delay)
        out[:, i * x.m : (i + 1) * x.m] = block
    return TimeSeries(t_out, out)


def _grid_shift(x: TimeSeries, delay: float) -> int | None:
    """Delay as an exact number of samples on a uniform grid, else None."""
    if not x.is_uniform:
        return None
    h = x.mean_spacing
    k = delay / h
    k_round = round(k)
    if k_round >= 1 and abs(k - k_round) <= 1e-9 * max(1.0, k_round):
        return k_round
    return None


def method2_surrogate(x: TimeSeries, params: DelayParams) -> ScalarSeries:
    """Norm distance of each delay-embedded state to the embedded start.

    Reduces to :func:`method1_surrogate` for embed_dim 1 and norm_p 2.
    """
    u = delay_embed(x, params)
    diff = u.values - u.values[0]
    if np.isposinf(params.norm_p):
        v = np.max(np.abs(diff), axis=1)
    else:
        v = np.linalg.norm(diff, ord=params.norm_p, axis=1)
    v[0] = 0.0
    return ScalarSeries(u.timestamps, v)


def method3_surrogate(
    x: TimeSeries, mode: RecurrenceMatrixMode = RecurrenceMatrixMode()
) -> ScalarSeries:
    """Average pairwise distance at each lag of the sample grid.

    The output is indexed by lag: timestamp k*h carries the average of
    the (squared, in ``squared_fast`` mode) distances over all n-k sample
    pairs k steps apart. Lag 0 is exactly 0. Non-uniform input is
    resampled onto a uniform grid first; ``squared_fast`` refuses
    non-uniform input unless ``resample_n`` is set explicitly.
    """
    if not x.is_uniform:
        if mode.resample_n is not None:
            x = resample_uniform(x, mode.resample_n)
        elif mode.mode == "squared_fast":
            raise ValueError(
                "squared_fast needs a uniform time grid; set resample_n to "
                "resample non-uniform input"
            )
        else:
            x = resample_uniform(x, x.n)
    elif mode.resample_n is not None and mode.resample_n != x.n:
        x = resample_uniform(x, mode.resample_n)

    n = x.n
    h = x.mean_spacing
    lags = np.arange(n) * h
    if mode.mode == "squared_fast":
        v = _squared_lag_averages(x.values)
    else:
        v = np.zeros(n)
        for k in range(1, n):
            d = np.linalg.norm(x.values[k:] - x.values[:-k], axis=1)
            v[k] = d.mean()
    return ScalarSeries(lags, v)


def _squared_lag_averages(values: np.ndarray) -> np.ndarray:
    """Mean squared distance per lag via cumulative sums + autocorrelation.

    sum_j ||x_j - x_{j+k}||^2 = (head sum of ||x||^2) + (tail sum) -
    2 * autocorrelation at lag k, so the whole profile costs one FFT.
    """
    n = values.shape[0]
    sq = np.einsum("ij,ij->i", values, values)
    prefix = np.concatenate([[0.0], np.cumsum(sq)])
    # head[k] = sum_{j<n-k} sq_j, tail[k] = sum_{j>=k} sq_j
    head = prefix[n - np.arange(n)]
    tail = prefix[n] - prefix[np.arange(n)]

    L = scipy.fft.next_fast_len(2 * n)
    spec = scipy.fft.rfft(values, n=L, axis=0)
    corr = scipy.fft.irfft((spec * np.conj(spec)).sum(axis=1).real, n=L)[:n]

    counts = n - np.arange(n)
    v = (head + tail - 2.0 * corr) / counts
    v[0] = 0.0
    return np.maximum(v, 0.0)


def min_averaged_pairs(n: int) -> float:
    """Smallest pair count for which a lag average is considered reliable.

    Lags near the end of the axis are averages of very few pairs; the
    detector ignores minima whose lag leaves fewer than this many pairs.
    """
    return max(8.0, n / 100.0)
