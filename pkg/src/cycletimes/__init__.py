"""Recurrence-time and cycle-length estimation for multi-variate time series.

Builds a scalar surrogate of the input trajectory, extracts its
significant local minima with zero-dimensional sublevel-set persistence,
and converts them into recurrence times and cycle lengths. Three
surrogate constructions are provided, suited to periodic, repetitive and
recurring behaviour respectively.
"""

from .series import (
    TimeSeries,
    ScalarSeries,
    euclidean_norm,
    p_norm,
    interpolate_at,
    interpolate_many,
    resample_uniform,
)
from .persistence import (
    PersistencePoint,
    PersistenceDiagram,
    sublevel_persistence,
    significant_points,
    bottleneck_distance,
)
from .surrogates import (
    DelayParams,
    RecurrenceMatrixMode,
    delay_embed,
    method1_surrogate,
    method2_surrogate,
    method3_surrogate,
    min_averaged_pairs,
)
from .detector import (
    NoRecurrenceFound,
    RecurrenceResult,
    detect,
    detect_from_surrogate,
    detect_method3,
)
from .synthetic import (
    BenchmarkSection,
    LabeledSeries,
    PerturbationSpec,
    ScenarioError,
    ScenarioSpec,
    WarpSpec,
    benchmark_suite,
    generate,
    validate_periodic,
    validate_recurring,
)
from .evaluation import (
    CycleCountMismatch,
    EvalReport,
    OverallScore,
    SectionScore,
    boxplot_rows,
    evaluate_run,
    format_report_table,
    mae,
    mare,
)
from .io import (
    CsvFormatError,
    diagram_from_dict,
    diagram_to_dict,
    read_series_csv,
    result_from_dict,
    result_to_dict,
    sidecar_to_dict,
    truth_from_sidecar,
    write_series_csv,
)

__version__ = "0.1.0"
