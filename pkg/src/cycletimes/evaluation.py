"""Scoring of estimated cycle lengths against ground truth.

A section whose estimated cycle count disagrees with the truth is a
failure: it gets no scores, is excluded from the overall aggregates and
from the per-time error export, and is listed loudly instead. Matched
sections are scored with the mean absolute error (in seconds and in
samples) and the mean absolute relative error of the cycle lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .detector import RecurrenceResult
from .synthetic import LabeledSeries

__all__ = [
    "CycleCountMismatch",
    "mae",
    "mare",
    "SectionScore",
    "OverallScore",
    "EvalReport",
    "evaluate_run",
    "format_report_table",
    "boxplot_rows",
]


class CycleCountMismatch(ValueError):
    """Estimated and true cycle counts differ; a failure, not a score."""

    def __init__(self, expected: int, got: int):
        super().__init__(f"expected {expected} cycles, estimated {got}")
        self.expected = expected
        self.got = got


def _paired(true_lengths, est_lengths) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(true_lengths, dtype=float)
    e = np.asarray(est_lengths, dtype=float)
    if t.ndim != 1 or t.size < 1:
        raise ValueError("need at least one cycle")
    if t.shape != e.shape:
        raise CycleCountMismatch(t.size, e.size)
    return t, e


def mae(true_lengths, est_lengths) -> float:
    """Mean absolute error (1/k) sum |tau_i - est_i|; unit follows the
    inputs."""
    t, e = _paired(true_lengths, est_lengths)
    return float(np.mean(np.abs(t - e)))


def mare(true_lengths, est_lengths) -> float:
    """Mean absolute relative error (1/k) sum |(tau_i - est_i) / tau_i|."""
    t, e = _paired(true_lengths, est_lengths)
    if np.any(t == 0):
        raise ValueError("true cycle lengths must be nonzero")
    return float(np.mean(np.abs((t - e) / t)))


@dataclass(frozen=True)
class SectionScore:
    """Scores for one section; unmatched sections carry None scores."""

    name: str
    n_cycles: int
    n_estimated: int | None
    matched: bool
    mae_seconds: float | None = None
    mae_samples: float | None = None
    mare: float | None = None
    rel_time_errors: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_cycles": self.n_cycles,
            "n_estimated": self.n_estimated,
            "matched": self.matched,
            "mae_seconds": self.mae_seconds,
            "mae_samples": self.mae_samples,
            "mare": self.mare,
        }


@dataclass(frozen=True)
class OverallScore:
    """Pooled per-cycle aggregates over all matched sections."""

    n_sections: int
    n_matched: int
    n_cycles: int
    mae_seconds: float | None
    mae_samples: float | None
    mare: float | None

    def to_dict(self) -> dict:
        return {
            "n_sections": self.n_sections,
            "n_matched": self.n_matched,
            "n_cycles": self.n_cycles,
            "mae_seconds": self.mae_seconds,
            "mae_samples": self.mae_samples,
            "mare": self.mare,
        }


@dataclass(frozen=True)
class EvalReport:
    per_section: dict
    overall: OverallScore
    failures: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "per_section": {k: v.to_dict() for k, v in self.per_section.items()},
            "overall": self.overall.to_dict(),
            "failures": list(self.failures),
        }


def evaluate_run(
    results: Sequence[tuple[LabeledSeries, RecurrenceResult | None]],
    section_names: Sequence[str] | None = None,
) -> EvalReport:
    """Score one (series, result) pair per section.

    A result of None means detection raised no-recurrence-found, which
    counts as a failure like a wrong cycle count. Overall aggregates
    pool the per-cycle errors of all matched sections, so a single
    matched section's overall equals its own score.
    """
    if section_names is None:
        section_names = [f"section-{i}" for i in range(len(results))]
    if len(section_names) != len(results):
        raise ValueError("one section name per result")

    per_section: dict[str, SectionScore] = {}
    failures: list[str] = []
    pool_abs: list[float] = []
    pool_abs_samples: list[float] = []
    pool_rel: list[float] = []
    pooled_cycles = 0

    for name, (labeled, result) in zip(section_names, results):
        true = np.asarray(labeled.true_lengths, dtype=float)
        if result is None:
            per_section[name] = SectionScore(
                name=name, n_cycles=true.size, n_estimated=None, matched=False
            )
            failures.append(name)
            continue
        est = np.asarray(result.cycle_lengths, dtype=float)
        if est.size != true.size:
            per_section[name] = SectionScore(
                name=name, n_cycles=true.size, n_estimated=est.size, matched=False
            )
            failures.append(name)
            continue

        spacing = labeled.series.mean_spacing
        abs_err = np.abs(true - est)
        sec_mae = float(np.mean(abs_err))
        sec_mare = float(np.mean(abs_err / true))
        true_t = np.asarray(labeled.true_times, dtype=float)
        est_t = np.asarray(result.recurrence_times, dtype=float)
        rel_t = tuple(np.abs(est_t[1:] - true_t[1:]) / true)

        per_section[name] = SectionScore(
            name=name,
            n_cycles=true.size,
            n_estimated=est.size,
            matched=True,
            mae_seconds=sec_mae,
            mae_samples=sec_mae / spacing,
            mare=sec_mare,
            rel_time_errors=rel_t,
        )
        pool_abs.extend(abs_err)
        pool_abs_samples.extend(abs_err / spacing)
        pool_rel.extend(abs_err / true)
        pooled_cycles += true.size

    overall = OverallScore(
        n_sections=len(results),
        n_matched=len(results) - len(failures),
        n_cycles=pooled_cycles,
        mae_seconds=float(np.mean(pool_abs)) if pool_abs else None,
        mae_samples=float(np.mean(pool_abs_samples)) if pool_abs_samples else None,
        mare=float(np.mean(pool_rel)) if pool_rel else None,
    )
    return EvalReport(
        per_section=per_section, overall=overall, failures=tuple(failures)
    )


def _cell(value: float | None, fmt: str = "{:.2f}") -> str:
    return "-" if value is None else fmt.format(value)


def format_report_table(report: EvalReport) -> str:
    """Aligned text table, one row per section, dashes for failures."""
    header = f"{'section':<12} {'cycles':>6} {'MAE[smp]':>10} {'MAE[s]':>10} {'MARE':>8}"
    lines = [header, "-" * len(header)]
    for name, s in report.per_section.items():
        lines.append(
            f"{name:<12} {s.n_cycles:>6d} {_cell(s.mae_samples):>10} "
            f"{_cell(s.mae_seconds, '{:.4f}'):>10} {_cell(s.mare, '{:.4f}'):>8}"
        )
    o = report.overall
    lines.append("-" * len(header))
    lines.append(
        f"{'overall':<12} {o.n_cycles:>6d} {_cell(o.mae_samples):>10} "
        f"{_cell(o.mae_seconds, '{:.4f}'):>10} {_cell(o.mare, '{:.4f}'):>8}"
    )
    if report.failures:
        lines.append(f"failed sections (wrong cycle count): {', '.join(report.failures)}")
    return "\n".join(lines)


def boxplot_rows(report: EvalReport) -> list[tuple[str, int, float]]:
    """Per-recurrence-time relative errors of matched sections: rows
    (section, time index i >= 1, |est_T_i - T_i| / tau_i)."""
    rows = []
    for name, s in report.per_section.items():
        for i, err in enumerate(s.rel_time_errors, start=1):
            rows.append((name, i, float(err)))
    return rows
