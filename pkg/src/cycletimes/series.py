"""Time-series containers, norms, interpolation and resampling.

The two containers are deliberately thin: validated, immutable wrappers
around numpy arrays. ``TimeSeries`` holds an m-dimensional sampled curve,
``ScalarSeries`` a non-negative scalar signal on the same kind of time
grid. Everything downstream (surrogate construction, persistence,
detection) operates on these.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TimeSeries",
    "ScalarSeries",
    "euclidean_norm",
    "p_norm",
    "interpolate_at",
    "interpolate_many",
    "resample_uniform",
]

#: Relative tolerance used when deciding whether a time grid is uniform.
UNIFORM_RTOL = 1e-9


def _as_readonly(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


def _check_timestamps(t):
    if t.ndim != 1:
        raise ValueError("timestamps must be one-dimensional")
    if t.size < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.isfinite(t)):
        raise ValueError("timestamps contain NaN or Inf")
    if not np.all(np.diff(t) > 0):
        raise ValueError("timestamps must be strictly increasing")


@dataclass(frozen=True)
class TimeSeries:
    """Sampled multi-variate curve: n timestamps, n rows of m coordinates.

    Timestamps are absolute seconds, strictly increasing, n >= 2. Values
    are an (n, m) float array with m >= 1 and no NaN/Inf. Both arrays are
    stored read-only; instances are safe to share across threads.
    """

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim == 1:
            v = v[:, None]
        _check_timestamps(t)
        if v.ndim != 2:
            raise ValueError("values must be a 2-d array of shape (n, m)")
        if v.shape[0] != t.size:
            raise ValueError(
                f"length mismatch: {t.size} timestamps vs {v.shape[0]} value rows"
            )
        if v.shape[1] < 1:
            raise ValueError("values must have at least one coordinate")
        if not np.all(np.isfinite(v)):
            raise ValueError("values contain NaN or Inf")
        object.__setattr__(self, "timestamps", _as_readonly(t))
        object.__setattr__(self, "values", _as_readonly(v))

    @property
    def n(self) -> int:
        return self.timestamps.size

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def span(self) -> float:
        """Length of the sampled time interval."""
        return float(self.timestamps[-1] - self.timestamps[0])

    @property
    def mean_spacing(self) -> float:
        return self.span / (self.n - 1)

    @property
    def is_uniform(self) -> bool:
        """True if the time grid is equispaced up to tiny rounding."""
        dt = np.diff(self.timestamps)
        h = self.mean_spacing
        return bool(np.max(np.abs(dt - h)) <= UNIFORM_RTOL * max(h, abs(self.timestamps[-1])))


@dataclass(frozen=True)
class ScalarSeries:
    """Non-negative scalar signal on a strictly increasing time grid.

    Used for the surrogate functions fed into the sublevel-set filtration.
    Same validation rules as :class:`TimeSeries`, plus values >= 0.
    """

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        _check_timestamps(t)
        if v.ndim != 1 or v.size != t.size:
            raise ValueError("values must be a 1-d array matching the timestamps")
        if not np.all(np.isfinite(v)):
            raise ValueError("values contain NaN or Inf")
        if np.any(v < 0):
            raise ValueError("scalar surrogate values must be non-negative")
        object.__setattr__(self, "timestamps", _as_readonly(t))
        object.__setattr__(self, "values", _as_readonly(v))

    @property
    def n(self) -> int:
        return self.timestamps.size

    @property
    def span(self) -> float:
        return float(self.timestamps[-1] - self.timestamps[0])

    @property
    def mean_spacing(self) -> float:
        return self.span / (self.n - 1)


def euclidean_norm(row) -> float:
    """2-norm of a coordinate vector; zero iff the vector is all zeros."""
    row = np.asarray(row, dtype=np.float64)
    if not np.all(np.isfinite(row)):
        raise ValueError("non-finite entry in vector")
    return float(np.linalg.norm(row))


def p_norm(row, p) -> float:
    """p-norm of a vector for p >= 1 or ``inf``; p=2 matches euclidean_norm."""
    row = np.asarray(row, dtype=np.float64)
    if not np.all(np.isfinite(row)):
        raise ValueError("non-finite entry in vector")
    if not (p >= 1.0):
        raise ValueError(f"p-norm requires p >= 1, got {p}")
    return float(np.linalg.norm(row, ord=p))


def interpolate_many(series: TimeSeries, t) -> np.ndarray:
    """Piecewise-linear interpolation of each coordinate at query times.

    Parameters
    ----------
    series : TimeSeries
    t : array_like
        Query times; each must lie in [timestamps[0], timestamps[-1]].
        A slack of one part in 1e-12 of the span is tolerated to absorb
        float rounding of computed query times.

    Returns
    -------
    (len(t), m) array. Exact at sample times.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    ts = series.timestamps
    tol = series.span * 1e-12
    if np.any(t < ts[0] - tol) or np.any(t > ts[-1] + tol):
        raise ValueError(
            f"query time outside sampled domain [{ts[0]}, {ts[-1]}]"
        )
    t = np.clip(t, ts[0], ts[-1])
    out = np.empty((t.size, series.m))
    for c in range(series.m):
        out[:, c] = np.interp(t, ts, series.values[:, c])
    return out


def interpolate_at(series: TimeSeries, t: float) -> np.ndarray:
    """Value of the series at a single time; see :func:`interpolate_many`."""
    return interpolate_many(series, [t])[0]


def resample_uniform(series: TimeSeries, n_out: int) -> TimeSeries:
    """Resample onto an equispaced grid spanning the same interval.

    Values come from linear interpolation; on an already-uniform grid with
    ``n_out == n`` this reproduces the input within float rounding.
    """
    if n_out < 2:
        raise ValueError("n_out must be at least 2")
    t = np.linspace(series.timestamps[0], series.timestamps[-1], n_out)
    return TimeSeries(t, interpolate_many(series, t))
