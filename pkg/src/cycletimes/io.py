"""File formats: the series CSV and the JSON codecs used by the CLI.

CSV carries one series: header ``t,v1,...,vm``, one row per sample,
decimal-point reals. The reader is strict (ragged rows, non-numeric
cells, unordered or non-finite timestamps all fail with the offending
row number); the writer emits 17 significant digits so a round trip
reproduces every double bit-exactly.

JSON documents carry a ``schema_version`` field; an infinite death in a
diagram is encoded as null.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Mapping

import numpy as np

from .detector import RecurrenceResult
from .persistence import PersistenceDiagram, PersistencePoint
from .series import TimeSeries
from .synthetic import LabeledSeries, ScenarioSpec

__all__ = [
    "CsvFormatError",
    "read_series_csv",
    "write_series_csv",
    "diagram_to_dict",
    "diagram_from_dict",
    "result_to_dict",
    "result_from_dict",
    "sidecar_to_dict",
    "truth_from_sidecar",
]

SCHEMA_VERSION = 1


class CsvFormatError(ValueError):
    """Malformed series CSV; ``row`` is the 1-based offending row."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


def _open_maybe(path_or_file, mode: str):
    if isinstance(path_or_file, (str, Path)):
        return open(path_or_file, mode, newline=""), True
    return path_or_file, False


def read_series_csv(path_or_file) -> TimeSeries:
    """Parse a series CSV into a TimeSeries."""
    f, owned = _open_maybe(path_or_file, "r")
    try:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(1, "empty file") from None
        header = [c.strip() for c in header]
        if len(header) < 2 or header[0] != "t":
            raise CsvFormatError(
                1, "header must be 't' followed by at least one value column"
            )
        width = len(header)

        times: list[float] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue  # blank trailing line
            if len(row) != width:
                raise CsvFormatError(
                    lineno, f"expected {width} columns, got {len(row)}"
                )
            try:
                parsed = [float(cell) for cell in row]
            except ValueError:
                raise CsvFormatError(lineno, f"non-numeric cell in {row!r}") from None
            if not all(math.isfinite(v) for v in parsed):
                raise CsvFormatError(lineno, "non-finite value")
            if times and parsed[0] <= times[-1]:
                raise CsvFormatError(
                    lineno, "timestamps must be strictly increasing"
                )
            times.append(parsed[0])
            rows.append(parsed[1:])

        if len(rows) < 2:
            raise CsvFormatError(
                len(rows) + 1, "need at least two data rows"
            )
        return TimeSeries(np.array(times), np.array(rows))
    finally:
        if owned:
            f.close()


def write_series_csv(x: TimeSeries, path_or_file) -> None:
    f, owned = _open_maybe(path_or_file, "w")
    try:
        f.write("t," + ",".join(f"v{i + 1}" for i in range(x.m)) + "\n")
        for t, row in zip(x.timestamps, x.values):
            cells = [f"{t:.17g}"] + [f"{v:.17g}" for v in row]
            f.write(",".join(cells) + "\n")
    finally:
        if owned:
            f.close()


# ----------------------------------------------------------------- JSON


def _encode_death(death: float):
    return None if math.isinf(death) else death


def diagram_to_dict(diagram: PersistenceDiagram) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "domain_length": diagram.domain_length,
        "points": [
            {
                "birth": p.birth,
                "death": _encode_death(p.death),
                "min_index": p.min_index,
            }
            for p in diagram.points
        ],
    }


def diagram_from_dict(d: Mapping) -> PersistenceDiagram:
    points = tuple(
        PersistencePoint(
            birth=float(p["birth"]),
            death=math.inf if p["death"] is None else float(p["death"]),
            min_index=int(p["min_index"]),
        )
        for p in d["points"]
    )
    return PersistenceDiagram(points=points, domain_length=int(d["domain_length"]))


def result_to_dict(result: RecurrenceResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "method": result.method,
        "params": dict(result.params),
        "recurrence_times": list(result.recurrence_times),
        "cycle_lengths": list(result.cycle_lengths),
        "candidate_lags": list(result.candidate_lags),
        "warnings": list(result.warnings),
        "diagram": diagram_to_dict(result.diagram)["points"],
        "domain_length": result.diagram.domain_length,
    }


def result_from_dict(d: Mapping) -> RecurrenceResult:
    diagram = diagram_from_dict(
        {"points": d["diagram"], "domain_length": d["domain_length"]}
    )
    return RecurrenceResult(
        recurrence_times=tuple(d["recurrence_times"]),
        method=int(d["method"]),
        params=dict(d["params"]),
        diagram=diagram,
        warnings=tuple(d.get("warnings", ())),
        candidate_lags=tuple(d.get("candidate_lags", ())),
    )


def sidecar_to_dict(labeled: LabeledSeries) -> dict:
    """Ground-truth sidecar written next to a generated CSV."""
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": labeled.seed,
        "spec": labeled.spec.to_dict(),
        "true_times": list(labeled.true_times),
        "true_lengths": list(labeled.true_lengths),
        "n_samples": labeled.series.n,
    }


def truth_from_sidecar(d: Mapping) -> LabeledSeries:
    """Rebuild ground truth from a sidecar alone.

    The sample values are not stored in the sidecar; evaluation needs
    only the grid geometry, so the series is reconstructed with zero
    values on a uniform grid of the recorded length.
    """
    times = [float(v) for v in d["true_times"]]
    n = int(d["n_samples"])
    t = np.linspace(times[0], times[-1], n)
    return LabeledSeries(
        series=TimeSeries(t, np.zeros((n, 1))),
        true_times=tuple(times),
        true_lengths=tuple(float(v) for v in d["true_lengths"]),
        spec=ScenarioSpec.from_dict(d["spec"]),
        seed=int(d["seed"]),
    )
