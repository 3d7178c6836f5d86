"""From surrogate to recurrence times.

The surrogate's persistence diagram is filtered to its significant
points (birth below epsilon, persistence above delta); their minima are
mapped back to the time axis and become the recurrence times
T_0 < ... < T_k. T_0 is the start of the observed domain and T_k its
end, so the last cycle may be incomplete. Method 3 works on the lag
axis instead: the smallest significant lag is taken as a constant
period and the times are its multiples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .persistence import PersistenceDiagram, significant_points, sublevel_persistence
from .series import ScalarSeries, TimeSeries
from .surrogates import (
    DelayParams,
    RecurrenceMatrixMode,
    method1_surrogate,
    method2_surrogate,
    method3_surrogate,
    min_averaged_pairs,
)

__all__ = [
    "RecurrenceResult",
    "NoRecurrenceFound",
    "detect_from_surrogate",
    "detect_method3",
    "detect",
]


class NoRecurrenceFound(Exception):
    """The surrogate shows no recurrence at the given epsilon and delta.

    Carries the persistence diagram that was examined, for diagnostics.
    """

    def __init__(self, message: str, diagram: PersistenceDiagram | None = None):
        super().__init__(message)
        self.diagram = diagram


@dataclass(frozen=True)
class RecurrenceResult:
    """Detected recurrence times plus full provenance.

    ``cycle_lengths`` is derived: tau_i = T_i - T_{i-1}. ``candidate_lags``
    is populated by method 3 only and lists every significant lag, of
    which just the smallest was used.
    """

    recurrence_times: tuple[float, ...]
    method: int
    params: Mapping[str, object]
    diagram: PersistenceDiagram
    warnings: tuple[str, ...] = ()
    candidate_lags: tuple[float, ...] = ()

    def __post_init__(self):
        times = tuple(float(t) for t in self.recurrence_times)
        if len(times) < 2:
            raise ValueError("need at least two recurrence times")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("recurrence times must be strictly increasing")
        object.__setattr__(self, "recurrence_times", times)
        object.__setattr__(self, "warnings", tuple(self.warnings))
        object.__setattr__(
            self, "candidate_lags", tuple(float(v) for v in self.candidate_lags)
        )
        object.__setattr__(self, "params", dict(self.params))

    @property
    def cycle_lengths(self) -> tuple[float, ...]:
        t = self.recurrence_times
        return tuple(b - a for a, b in zip(t, t[1:]))

    @property
    def k(self) -> int:
        """Number of cycles."""
        return len(self.recurrence_times) - 1


def _dedup_keep_left(times: list[float], radius: float) -> list[float]:
    """Greedy left-to-right thinning: drop any time closer than radius
    to the previously kept one. Input must be sorted."""
    kept: list[float] = []
    for t in times:
        if not kept or t - kept[-1] >= radius:
            kept.append(t)
    return kept


def detect_from_surrogate(
    v: ScalarSeries,
    epsilon: float,
    delta: float,
    full_span_end: float,
    *,
    method: int = 1,
    params: Mapping[str, object] | None = None,
) -> RecurrenceResult:
    """Recurrence times from a method-1 or method-2 surrogate.

    Significant minima interior to the domain become recurrence times;
    T_0 (domain start) and T_k (``full_span_end``, the end of the
    original series even if the surrogate's domain was truncated) are
    always included. Times within one mean sample spacing of each other
    collapse to the earlier one.

    If no interior minimum is significant, the series is reported as a
    single spanning cycle provided the surrogate at least left and
    revisited the start's vicinity (some finite diagram point has
    persistence above delta); otherwise NoRecurrenceFound is raised.
    """
    diagram = sublevel_persistence(v)
    sig = significant_points(diagram, epsilon, delta)
    h = v.mean_spacing
    t0 = float(v.timestamps[0])
    if not full_span_end > t0:
        raise ValueError("full_span_end must lie beyond the domain start")

    times = [float(v.timestamps[p.min_index]) for p in sig]
    interior = [t for t in times if t - t0 >= h and full_span_end - t >= h]
    interior = _dedup_keep_left(interior, h)

    # A return minimum sitting just shy of the domain end (the embedding
    # truncates the domain; noise nudges minima) would otherwise spawn a
    # sliver of a final cycle. Fold it into T_k unless the trailing
    # fragment is at least half the preceding cycle, which is the same
    # convention method 3 uses for its last period multiple.
    snapped_end = False
    while interior:
        prev = interior[-2] if len(interior) >= 2 else t0
        if full_span_end - interior[-1] < 0.5 * (interior[-1] - prev):
            interior.pop()
            snapped_end = True
        else:
            break

    warnings: list[str] = []
    if not interior and not snapped_end:
        deep_valley = any(p.persistence > delta for p in diagram.finite_points())
        if not deep_valley:
            raise NoRecurrenceFound(
                "surrogate has no local minimum with persistence above delta",
                diagram,
            )
        warnings.append(
            "no interior return below epsilon; reporting the full span as "
            "a single cycle"
        )

    all_params = {"epsilon": float(epsilon), "delta": float(delta)}
    if params:
        all_params.update(params)
    return RecurrenceResult(
        recurrence_times=[t0] + interior + [float(full_span_end)],
        method=method,
        params=all_params,
        diagram=diagram,
        warnings=tuple(warnings),
    )


def detect_method3(
    v_lag: ScalarSeries,
    epsilon: float,
    delta: float,
    span: float,
    *,
    t_start: float = 0.0,
    params: Mapping[str, object] | None = None,
) -> RecurrenceResult:
    """Recurrence times from the lag-average surrogate.

    Significant lags are read off the surrogate's diagram, skipping lag 0
    and lags averaged over fewer than max(8, n/100) pairs. The smallest
    one is the period estimate; times are its multiples from ``t_start``,
    with the final time snapped or extended to ``t_start + span``.
    """
    if not span > 0:
        raise ValueError("span must be positive")
    diagram = sublevel_persistence(v_lag)
    sig = significant_points(diagram, epsilon, delta)
    n = v_lag.n
    min_pairs = min_averaged_pairs(n)
    usable = [
        p for p in sig if p.min_index > 0 and (n - p.min_index) >= min_pairs
    ]
    if not usable:
        raise NoRecurrenceFound(
            "no significant lag below epsilon with persistence above delta",
            diagram,
        )
    lags = sorted(float(v_lag.timestamps[p.min_index]) for p in usable)
    period = lags[0]

    k_full = int(math.floor(span / period + 1e-9))
    times = [t_start + i * period for i in range(k_full + 1)]
    remainder = span - k_full * period
    if remainder > period / 2:
        times.append(t_start + span)
    else:
        times[-1] = t_start + span

    all_params = {"epsilon": float(epsilon), "delta": float(delta)}
    if params:
        all_params.update(params)
    return RecurrenceResult(
        recurrence_times=times,
        method=3,
        params=all_params,
        diagram=diagram,
        candidate_lags=lags,
    )


def detect(
    x: TimeSeries,
    method: int,
    epsilon: float,
    delta: float,
    params: DelayParams | RecurrenceMatrixMode | None = None,
) -> RecurrenceResult:
    """Full pipeline: build the surrogate for ``method`` and detect.

    ``params`` must be DelayParams for method 2 and may be a
    RecurrenceMatrixMode for method 3 (default exact_distance); method 1
    takes no extra parameters.
    """
    end = float(x.timestamps[-1])
    if method == 1:
        if params is not None:
            raise ValueError("method 1 takes no method parameters")
        v = method1_surrogate(x)
        return detect_from_surrogate(v, epsilon, delta, end, method=1)
    if method == 2:
        if not isinstance(params, DelayParams):
            raise ValueError("method 2 requires DelayParams")
        v = method2_surrogate(x, params)
        extra = {
            "embed_dim": params.embed_dim,
            "delay": params.delay,
            "norm_p": params.norm_p,
        }
        return detect_from_surrogate(
            v, epsilon, delta, end, method=2, params=extra
        )
    if method == 3:
        if params is None:
            params = RecurrenceMatrixMode()
        if not isinstance(params, RecurrenceMatrixMode):
            raise ValueError("method 3 requires a RecurrenceMatrixMode")
        v_lag = method3_surrogate(x, params)
        extra = {"mode": params.mode, "resample_n": params.resample_n}
        return detect_method3(
            v_lag,
            epsilon,
            delta,
            span=x.span,
            t_start=float(x.timestamps[0]),
            params=extra,
        )
    raise ValueError(f"method must be 1, 2 or 3, got {method!r}")
