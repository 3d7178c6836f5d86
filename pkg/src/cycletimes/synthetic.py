"""Synthetic benchmark series with exact ground truth.

A scenario describes one benchmark section: a closed base curve traced
``cycles`` times, optionally reparameterized per cycle (repetitive
behavior), optionally deformed per cycle away from the cycle boundaries
(recurring behavior), sampled uniformly or with jitter, and finally
covered in uniform noise. The true recurrence times are fixed by the
per-cycle durations before any noise is drawn, so every generated
series carries its exact ground truth.

Base curves are normalized so the farthest point from the start is at
distance 2; "curve radius" below means half that, i.e. 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .series import TimeSeries, interpolate_many

__all__ = [
    "ScenarioError",
    "WarpSpec",
    "PerturbationSpec",
    "ScenarioSpec",
    "LabeledSeries",
    "generate",
    "validate_periodic",
    "validate_recurring",
    "benchmark_suite",
    "BenchmarkSection",
    "BASE_CURVES",
]

WARP_SLOPE_MIN = 0.5
WARP_SLOPE_MAX = 2.0


class ScenarioError(ValueError):
    """Invalid scenario; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


# ------------------------------------------------------------ base curves


def _normalize(raw: Callable[[np.ndarray], np.ndarray]) -> Callable:
    s = np.linspace(0.0, 1.0, 4097)
    pts = raw(s)
    start = pts[0]
    top = np.max(np.linalg.norm(pts - start, axis=1))
    scale = 2.0 / top

    def curve(phase: np.ndarray) -> np.ndarray:
        return scale * (raw(np.asarray(phase, dtype=float)) - start)

    return curve


def _circle(dims: int, curve_seed: int) -> Callable:
    def raw(s):
        a = 2 * np.pi * s
        return np.column_stack([np.cos(a), np.sin(a)])

    return _normalize(raw)


def _lissajous(dims: int, curve_seed: int) -> Callable:
    # 3:2 frequency ratio, phase-shifted so the curve does not cross
    # its own start point mid-cycle
    def raw(s):
        a = 2 * np.pi * s
        return np.column_stack([np.sin(3 * a + np.pi / 2), np.sin(2 * a)])

    return _normalize(raw)


def _figure_eight(dims: int, curve_seed: int) -> Callable:
    def raw(s):
        a = 2 * np.pi * s
        return np.column_stack([np.sin(a), np.sin(2 * a)])

    return _normalize(raw)


def _multisine(dims: int, curve_seed: int) -> Callable:
    rng = np.random.default_rng(curve_seed)
    harmonics = np.arange(1, 4)
    amp_c = rng.normal(size=(dims, 3)) / harmonics
    amp_s = rng.normal(size=(dims, 3)) / harmonics

    def raw(s):
        a = 2 * np.pi * np.asarray(s, dtype=float)[:, None] * harmonics
        cos_part = np.cos(a) @ amp_c.T
        sin_part = np.sin(a) @ amp_s.T
        return cos_part + sin_part

    return _normalize(raw)


BASE_CURVES: dict[str, Callable[[int, int], Callable]] = {
    "circle": _circle,
    "lissajous": _lissajous,
    "figure_eight": _figure_eight,
    "multisine": _multisine,
}

_FIXED_DIM_CURVES = {"circle": 2, "lissajous": 2, "figure_eight": 2}


# ------------------------------------------------------------------ specs


@dataclass(frozen=True)
class WarpSpec:
    """Per-cycle reparameterization: a duration multiplier plus an
    optional piecewise-linear phase profile.

    ``knots`` are (u, gamma(u)) pairs from (0,0) to (1,1) with slopes in
    [0.5, 2]; None means a random profile is drawn at generation time.
    """

    stretch: float = 1.0
    knots: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if not self.stretch > 0:
            raise ScenarioError("warps", "stretch must be positive")
        if self.knots is None:
            return
        knots = tuple((float(u), float(g)) for u, g in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2 or knots[0] != (0.0, 0.0) or knots[-1] != (1.0, 1.0):
            raise ScenarioError("warps", "knots must run from (0,0) to (1,1)")
        u = np.array([p[0] for p in knots])
        g = np.array([p[1] for p in knots])
        du, dg = np.diff(u), np.diff(g)
        if np.any(du <= 0):
            raise ScenarioError("warps", "knot positions must increase")
        slopes = dg / du
        if np.any(slopes < WARP_SLOPE_MIN - 1e-12) or np.any(
            slopes > WARP_SLOPE_MAX + 1e-12
        ):
            raise ScenarioError("warps", "profile slopes must lie in [0.5, 2]")


@dataclass(frozen=True)
class PerturbationSpec:
    """Per-cycle shape deformation: windowed bumps supported strictly
    inside each cycle, vanishing within ``margin`` of the boundaries so
    the return to the start point is untouched."""

    amplitude: float
    n_bumps: int = 2
    margin: float = 0.1

    def __post_init__(self):
        if self.amplitude < 0:
            raise ScenarioError("perturbations", "amplitude must be >= 0")
        if self.n_bumps < 1:
            raise ScenarioError("perturbations", "n_bumps must be >= 1")
        if not 0 < self.margin <= 0.3:
            raise ScenarioError("perturbations", "margin must be in (0, 0.3]")


@dataclass(frozen=True)
class ScenarioSpec:
    """Declarative description of one benchmark section."""

    behavior: str
    base_curve: str
    cycles: int
    base_period: float = 1.0
    warps: tuple[WarpSpec, ...] | None = None
    perturbations: PerturbationSpec | None = None
    noise_amplitude: float = 0.0
    sampling: str = "uniform"
    jitter_fraction: float = 0.0
    samples_per_cycle: int = 2000
    dims: int = 2
    curve_seed: int = 0

    def __post_init__(self):
        if self.behavior not in ("periodic", "repetitive", "recurring"):
            raise ScenarioError("behavior", f"unknown behavior {self.behavior!r}")
        if self.base_curve not in BASE_CURVES:
            raise ScenarioError("base_curve", f"unknown curve {self.base_curve!r}")
        if self.cycles < 1:
            raise ScenarioError("cycles", "need at least one cycle")
        if not self.base_period > 0:
            raise ScenarioError("base_period", "must be positive")
        if self.noise_amplitude < 0:
            raise ScenarioError("noise_amplitude", "must be >= 0")
        if self.samples_per_cycle < 2:
            raise ScenarioError("samples_per_cycle", "must be >= 2")
        if self.sampling not in ("uniform", "jittered"):
            raise ScenarioError("sampling", f"unknown sampling {self.sampling!r}")
        if self.sampling == "jittered":
            if not 0 < self.jitter_fraction <= 0.45:
                raise ScenarioError(
                    "jitter_fraction", "jittered sampling needs a fraction in (0, 0.45]"
                )
        elif self.jitter_fraction != 0.0:
            raise ScenarioError(
                "jitter_fraction", "only meaningful with jittered sampling"
            )
        fixed = _FIXED_DIM_CURVES.get(self.base_curve)
        if fixed is not None and self.dims != fixed:
            raise ScenarioError(
                "dims", f"{self.base_curve} is {fixed}-dimensional"
            )
        if self.dims < 1:
            raise ScenarioError("dims", "must be >= 1")

        if self.warps is not None:
            warps = tuple(self.warps)
            object.__setattr__(self, "warps", warps)
            if len(warps) != self.cycles:
                raise ScenarioError(
                    "warps", f"expected {self.cycles} entries, got {len(warps)}"
                )
            if not all(isinstance(w, WarpSpec) for w in warps):
                raise ScenarioError("warps", "entries must be WarpSpec")

        if self.behavior == "periodic":
            if self.warps is not None:
                raise ScenarioError("warps", "periodic behavior admits no warps")
            if self.perturbations is not None:
                raise ScenarioError(
                    "perturbations", "periodic behavior admits no perturbations"
                )
        elif self.behavior == "repetitive":
            if self.warps is None:
                raise ScenarioError("warps", "repetitive behavior requires warps")
            if self.perturbations is not None:
                raise ScenarioError(
                    "perturbations", "repetitive behavior admits no perturbations"
                )
        else:  # recurring
            if self.perturbations is None:
                raise ScenarioError(
                    "perturbations", "recurring behavior requires perturbations"
                )

    # ---- declarative round-trip

    def to_dict(self) -> dict:
        d: dict = {
            "behavior": self.behavior,
            "base_curve": self.base_curve,
            "cycles": self.cycles,
            "base_period": self.base_period,
            "noise_amplitude": self.noise_amplitude,
            "sampling": self.sampling,
            "jitter_fraction": self.jitter_fraction,
            "samples_per_cycle": self.samples_per_cycle,
            "dims": self.dims,
            "curve_seed": self.curve_seed,
        }
        if self.warps is not None:
            d["warps"] = [
                {"stretch": w.stretch, "knots": w.knots and list(map(list, w.knots))}
                for w in self.warps
            ]
        if self.perturbations is not None:
            p = self.perturbations
            d["perturbations"] = {
                "amplitude": p.amplitude,
                "n_bumps": p.n_bumps,
                "margin": p.margin,
            }
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "ScenarioSpec":
        if not isinstance(d, Mapping):
            raise ScenarioError("scenario", "expected a mapping")
        known = {
            "behavior",
            "base_curve",
            "cycles",
            "base_period",
            "warps",
            "perturbations",
            "noise_amplitude",
            "sampling",
            "jitter_fraction",
            "samples_per_cycle",
            "dims",
            "curve_seed",
        }
        for key in d:
            if key not in known:
                raise ScenarioError(key, "unknown scenario field")
        kwargs = dict(d)
        if "warps" in kwargs and kwargs["warps"] is not None:
            warps = []
            for i, w in enumerate(kwargs["warps"]):
                if not isinstance(w, Mapping):
                    raise ScenarioError("warps", f"entry {i} must be a mapping")
                knots = w.get("knots")
                warps.append(
                    WarpSpec(
                        stretch=float(w.get("stretch", 1.0)),
                        knots=None
                        if knots is None
                        else tuple((float(u), float(g)) for u, g in knots),
                    )
                )
            kwargs["warps"] = tuple(warps)
        if "perturbations" in kwargs and kwargs["perturbations"] is not None:
            p = kwargs["perturbations"]
            if not isinstance(p, Mapping):
                raise ScenarioError("perturbations", "must be a mapping")
            kwargs["perturbations"] = PerturbationSpec(
                amplitude=float(p["amplitude"]),
                n_bumps=int(p.get("n_bumps", 2)),
                margin=float(p.get("margin", 0.1)),
            )
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ScenarioError("scenario", str(exc)) from exc


@dataclass(frozen=True)
class LabeledSeries:
    """A generated series together with its exact ground truth."""

    series: TimeSeries
    true_times: tuple[float, ...]
    true_lengths: tuple[float, ...]
    spec: ScenarioSpec
    seed: int

    def __post_init__(self):
        times = tuple(float(t) for t in self.true_times)
        lengths = tuple(float(v) for v in self.true_lengths)
        object.__setattr__(self, "true_times", times)
        object.__setattr__(self, "true_lengths", lengths)
        if len(lengths) != len(times) - 1:
            raise ValueError("need one length per consecutive time pair")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("true_times must be strictly increasing")
        t = self.series.timestamps
        if abs(times[0] - t[0]) > 1e-9 or abs(times[-1] - t[-1]) > 1e-9:
            raise ValueError("true_times must span the sampled domain")

    @property
    def eps_gen(self) -> float:
        """Return-distance bound the generator guarantees at the true
        times: noise moves both x(T_i) and x(0) by at most a*sqrt(m)."""
        a = self.spec.noise_amplitude
        return max(2.0 * a * np.sqrt(self.series.m), 1e-9)

    @property
    def delta_gen(self) -> float:
        """Guaranteed significance margin: the farthest point of every
        cycle sits at base distance 2, reduced by at most the
        perturbation amplitude and the noise."""
        amp = self.spec.perturbations.amplitude if self.spec.perturbations else 0.0
        return 2.0 - amp - 2.0 * self.eps_gen - 0.5


# ------------------------------------------------------------- generation


def _random_profile(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Monotone piecewise-linear profile through (0,0) and (1,1) with
    slopes in [0.5, 2], drawn by rejection."""
    for _ in range(200):
        n_interior = int(rng.integers(1, 4))
        u = np.sort(rng.uniform(0.15, 0.85, n_interior))
        if np.any(np.diff(u) < 0.1):
            continue
        g = u + rng.uniform(-0.12, 0.12, n_interior)
        uu = np.concatenate([[0.0], u, [1.0]])
        gg = np.concatenate([[0.0], np.sort(g), [1.0]])
        slopes = np.diff(gg) / np.diff(uu)
        if np.all(slopes >= WARP_SLOPE_MIN) and np.all(slopes <= WARP_SLOPE_MAX):
            return uu, gg
    return np.array([0.0, 1.0]), np.array([0.0, 1.0])


def _cycle_profiles(spec: ScenarioSpec, rng) -> list[tuple[np.ndarray, np.ndarray]]:
    profiles = []
    for i in range(spec.cycles):
        w = spec.warps[i] if spec.warps is not None else None
        if w is None or w.knots is None:
            if spec.behavior == "periodic":
                profiles.append((np.array([0.0, 1.0]), np.array([0.0, 1.0])))
            else:
                profiles.append(_random_profile(rng))
        else:
            u = np.array([p[0] for p in w.knots])
            g = np.array([p[1] for p in w.knots])
            profiles.append((u, g))
    return profiles


def _cycle_bumps(spec: ScenarioSpec, rng, dims: int) -> list:
    """Per-cycle bump parameter draws: (centers, widths, amps, dirs)."""
    p = spec.perturbations
    bumps = []
    for _ in range(spec.cycles):
        if p is None or p.amplitude == 0.0:
            bumps.append(None)
            continue
        widths = rng.uniform(0.05, 0.15, p.n_bumps)
        centers = np.array(
            [rng.uniform(p.margin + w, 1.0 - p.margin - w) for w in widths]
        )
        amps = (p.amplitude / p.n_bumps) * rng.uniform(0.5, 1.0, p.n_bumps)
        dirs = rng.normal(size=(p.n_bumps, dims))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        bumps.append((centers, widths, amps, dirs))
    return bumps


def _apply_bumps(phase: np.ndarray, bump, dims: int) -> np.ndarray:
    out = np.zeros((phase.size, dims))
    if bump is None:
        return out
    centers, widths, amps, dirs = bump
    for c, w, a, d in zip(centers, widths, amps, dirs):
        u = (phase - c) / w
        inside = np.abs(u) < 1.0
        window = np.zeros_like(phase)
        window[inside] = np.cos(0.5 * np.pi * u[inside]) ** 2
        out += (a * window)[:, None] * d
    return out


def generate(spec: ScenarioSpec, seed: int) -> LabeledSeries:
    """Realize a scenario deterministically.

    Draw order is fixed (profiles, bumps, jitter, noise), so the ground
    truth and curve shape never depend on how much randomness a later
    stage consumes.
    """
    rng = np.random.default_rng(seed)
    dims = spec.dims
    curve = BASE_CURVES[spec.base_curve](dims, spec.curve_seed)

    stretches = (
        np.array([w.stretch for w in spec.warps])
        if spec.warps is not None
        else np.ones(spec.cycles)
    )
    durations = stretches * spec.base_period
    true_times = np.concatenate([[0.0], np.cumsum(durations)])
    total = float(true_times[-1])

    profiles = _cycle_profiles(spec, rng)
    bumps = _cycle_bumps(spec, rng, dims)

    n = spec.cycles * spec.samples_per_cycle + 1
    t = np.linspace(0.0, total, n)
    if spec.sampling == "jittered":
        h = total / (n - 1)
        t = t.copy()
        t[1:-1] += rng.uniform(
            -spec.jitter_fraction * h, spec.jitter_fraction * h, n - 2
        )
        t = np.sort(t)

    values = np.empty((n, dims))
    cycle_idx = np.clip(
        np.searchsorted(true_times, t, side="right") - 1, 0, spec.cycles - 1
    )
    for i in range(spec.cycles):
        sel = cycle_idx == i
        if not np.any(sel):
            continue
        u = (t[sel] - true_times[i]) / durations[i]
        u = np.clip(u, 0.0, 1.0)
        uu, gg = profiles[i]
        phase = np.interp(u, uu, gg)
        values[sel] = curve(phase) + _apply_bumps(phase, bumps[i], dims)

    if spec.noise_amplitude > 0:
        values = values + rng.uniform(
            -spec.noise_amplitude, spec.noise_amplitude, size=values.shape
        )

    return LabeledSeries(
        series=TimeSeries(t, values),
        true_times=tuple(true_times),
        true_lengths=tuple(durations),
        spec=spec,
        seed=seed,
    )


# ------------------------------------------------------------- validation


def validate_periodic(x: TimeSeries, tau: float, eps: float) -> bool:
    """Is x periodic with period tau, up to a supremum deviation of 2*eps?

    The factor 2 covers an eps-approximation on each side of the
    comparison x(t + tau) vs x(t); x(t + tau) is interpolated.
    """
    if not 0 < tau < x.span:
        raise ValueError("tau must lie strictly inside the observed span")
    t = x.timestamps
    keep = t <= t[-1] - tau
    base = x.values[keep]
    shifted = interpolate_many(x, t[keep] + tau)
    gap = np.max(np.linalg.norm(shifted - base, axis=1))
    return bool(gap <= 2 * eps)


def validate_recurring(
    x: TimeSeries, times: Sequence[float], eps: float, delta: float
) -> bool:
    """Check the eps-delta recurrence conditions at the claimed times.

    At sampling resolution: near every interior T_i the distance to the
    start sample must dip to eps or below, and on both adjacent cycles
    the distance must climb above delta plus that dip.
    """
    times = [float(v) for v in times]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")
    if len(times) < 2:
        raise ValueError("need at least two times")
    t = x.timestamps
    if times[0] < t[0] - 1e-9 or times[-1] > t[-1] + 1e-9:
        raise ValueError("times must lie inside the sampled domain")

    v = np.linalg.norm(x.values - x.values[0], axis=1)
    h = x.mean_spacing
    for i in range(1, len(times) - 1):
        near = np.abs(t - times[i]) <= h
        if not np.any(near):
            return False
        dip = float(np.min(v[near]))
        if dip > eps:
            return False
        for lo, hi in ((times[i - 1], times[i]), (times[i], times[i + 1])):
            inside = (t > lo) & (t < hi)
            if not np.any(inside) or np.max(v[inside]) <= delta + dip:
                return False
    return True


# -------------------------------------------------------- benchmark suite


@dataclass(frozen=True)
class BenchmarkSection:
    """One row of the benchmark: a scenario, its seed, and the detection
    setup matched to its behavior class."""

    name: str
    spec: ScenarioSpec
    seed: int
    method: int
    epsilon: float
    delta: float
    method_params: object = None


def _repetitive_warps(pattern: Sequence[float]) -> tuple[WarpSpec, ...]:
    return tuple(WarpSpec(stretch=s) for s in pattern)


# Stretch patterns for the repetitive sections; all outside [0.9, 1.1]
# somewhere, which is what breaks the constant-period assumption of
# method 3.
_STRETCHES = [
    (1.0, 1.3, 0.8, 1.15, 0.9),
    (1.2, 0.85, 1.0, 1.25, 0.8),
    (0.8, 1.2, 1.3, 0.95, 1.0),
    (1.15, 1.15, 0.75, 1.0, 1.2),
    (0.85, 1.0, 1.25, 0.8, 1.3),
]

_RECURRING_CURVES = ["circle", "lissajous", "multisine"]
_REPETITIVE_CURVES = ["circle", "lissajous", "multisine", "circle", "lissajous"]
_MULTISINE_SEED = 7  # fixed shape with a wide berth around the start point


def benchmark_suite(
    samples_per_cycle: int = 2000, noise_amplitude: float = 0.02
) -> list[BenchmarkSection]:
    """The 18-section synthetic benchmark.

    Section I is periodic (20 cycles), II repetitive (5 cycles,
    stretched), III recurring (5 cycles, deformed); x.1 variants are
    clean and x.2 variants carry uniform noise of 0.02 times the curve
    radius. Methods are matched to behavior: 3 (fast mode) for periodic,
    2 for repetitive, 1 for recurring.
    """
    from .surrogates import DelayParams, RecurrenceMatrixMode

    sections: list[BenchmarkSection] = []

    def curve_kwargs(curve: str) -> dict:
        if curve == "multisine":
            return {"dims": 2, "curve_seed": _MULTISINE_SEED}
        return {}

    for tag, noise in (("1", 0.0), ("2", noise_amplitude)):
        spec = ScenarioSpec(
            behavior="periodic",
            base_curve="circle",
            cycles=20,
            noise_amplitude=noise,
            samples_per_cycle=samples_per_cycle,
        )
        sections.append(
            BenchmarkSection(
                name=f"I.{tag}",
                spec=spec,
                seed=100 + int(tag),
                method=3,
                epsilon=0.05,
                delta=1.0,
                method_params=RecurrenceMatrixMode("squared_fast"),
            )
        )

    for tag, noise in (("1", 0.0), ("2", noise_amplitude)):
        for j in range(5):
            curve = _REPETITIVE_CURVES[j]
            spec = ScenarioSpec(
                behavior="repetitive",
                base_curve=curve,
                cycles=5,
                warps=_repetitive_warps(_STRETCHES[j]),
                noise_amplitude=noise,
                samples_per_cycle=samples_per_cycle,
                **curve_kwargs(curve),
            )
            sections.append(
                BenchmarkSection(
                    name=f"II.{tag}.{j + 1}",
                    spec=spec,
                    seed=200 + 10 * int(tag) + j,
                    method=2,
                    epsilon=0.25,
                    delta=0.5,
                    method_params=DelayParams(embed_dim=2, delay=0.01),
                )
            )

    for tag, noise in (("1", 0.0), ("2", noise_amplitude)):
        for j in range(3):
            curve = _RECURRING_CURVES[j]
            spec = ScenarioSpec(
                behavior="recurring",
                base_curve=curve,
                cycles=5,
                perturbations=PerturbationSpec(amplitude=0.25),
                noise_amplitude=noise,
                samples_per_cycle=samples_per_cycle,
                **curve_kwargs(curve),
            )
            sections.append(
                BenchmarkSection(
                    name=f"III.{tag}.{j + 1}",
                    spec=spec,
                    seed=300 + 10 * int(tag) + j,
                    method=1,
                    epsilon=0.15,
                    delta=0.5,
                )
            )

    return sections
