"""Command-line interface.

Four subcommands: ``detect`` runs the full pipeline on a series CSV,
``diagram`` stops after the surrogate and its persistence diagram,
``generate`` realizes scenario files (or the built-in benchmark suite),
and ``evaluate`` scores result files against ground-truth sidecars.

Output is machine-first: JSON on standard output, human-readable forms
behind flags. Exit codes: 0 success, 2 usage error, 3 unreadable or
malformed input, 4 no recurrence found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detector import NoRecurrenceFound, detect_from_surrogate, detect_method3
from .evaluation import boxplot_rows, evaluate_run, format_report_table
from .io import (
    CsvFormatError,
    diagram_to_dict,
    read_series_csv,
    result_to_dict,
    sidecar_to_dict,
    truth_from_sidecar,
    write_series_csv,
)
from .persistence import sublevel_persistence
from .series import TimeSeries
from .surrogates import (
    DelayParams,
    RecurrenceMatrixMode,
    method1_surrogate,
    method2_surrogate,
    method3_surrogate,
)
from .synthetic import ScenarioError, ScenarioSpec, benchmark_suite, generate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NO_RECURRENCE = 4


def _parse_delay(text: str, mean_spacing: float, parser) -> tuple[float, str]:
    """Delay flag with an explicit unit: '0.5s' or '500samples'.

    Returns (seconds, original text). The sample form is converted with
    the input's mean sample spacing.
    """
    text = text.strip()
    if text.endswith("samples"):
        try:
            count = float(text[: -len("samples")])
        except ValueError:
            parser.error(f"cannot parse --delay {text!r}")
        return count * mean_spacing, text
    if text.endswith("s"):
        try:
            return float(text[:-1]), text
        except ValueError:
            parser.error(f"cannot parse --delay {text!r}")
    parser.error(
        f"--delay {text!r} needs a unit suffix: e.g. '0.5s' or '500samples'"
    )


def _add_detection_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="series CSV (header t,v1,...,vm)")
    p.add_argument("--method", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--epsilon", type=float, required=True,
                   help="birth threshold for significant minima")
    p.add_argument("--delta", type=float, required=True,
                   help="persistence threshold for significant minima")
    p.add_argument("--embed-dim", type=int, help="method 2: embedding dimension")
    p.add_argument("--delay", help="method 2: time delay, e.g. '0.5s' or '500samples'")
    p.add_argument("--norm-p", default="2",
                   help="method 2: p-norm order, a real >= 1 or 'inf'")
    p.add_argument("--mode", choices=("exact_distance", "squared_fast"),
                   help="method 3: surrogate mode (default exact_distance)")
    p.add_argument("--resample-n", type=int,
                   help="method 3: resample non-uniform input to this many points")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")


def _check_method_flags(args, parser) -> None:
    if args.method == 2:
        if args.embed_dim is None or args.delay is None:
            parser.error("--method 2 requires --embed-dim and --delay")
        if args.mode or args.resample_n:
            parser.error("--mode/--resample-n apply to --method 3 only")
    else:
        if args.embed_dim is not None or args.delay is not None:
            parser.error("--embed-dim/--delay apply to --method 2 only")
        if args.norm_p != "2":
            parser.error("--norm-p applies to --method 2 only")
        if args.method == 1 and (args.mode or args.resample_n):
            parser.error("--mode/--resample-n apply to --method 3 only")


def _load_series(path: str) -> TimeSeries:
    try:
        return read_series_csv(path)
    except CsvFormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from exc
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from exc
    except ValueError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from exc


def _build_surrogate(x: TimeSeries, args, parser):
    """Surrogate series plus the parameter record for the result JSON."""
    if args.method == 1:
        return method1_surrogate(x), {}
    if args.method == 2:
        try:
            norm_p = float(args.norm_p)
        except ValueError:
            parser.error(f"cannot parse --norm-p {args.norm_p!r}")
        delay_s, delay_text = _parse_delay(args.delay, x.mean_spacing, parser)
        try:
            params = DelayParams(args.embed_dim, delay_s, norm_p)
            v = method2_surrogate(x, params)
        except ValueError as exc:
            parser.error(str(exc))
        record = {
            "embed_dim": args.embed_dim,
            "delay": delay_s,
            "delay_input": delay_text,
            "norm_p": norm_p,
        }
        return v, record
    mode = RecurrenceMatrixMode(args.mode or "exact_distance", args.resample_n)
    try:
        v = method3_surrogate(x, mode)
    except ValueError as exc:
        parser.error(str(exc))
    return v, {"mode": mode.mode, "resample_n": mode.resample_n}


def _emit(doc: dict, pretty: bool) -> None:
    if pretty:
        json.dump(doc, sys.stdout, indent=2)
    else:
        json.dump(doc, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def cmd_detect(args, parser) -> int:
    _check_method_flags(args, parser)
    x = _load_series(args.input)
    v, record = _build_surrogate(x, args, parser)
    try:
        if args.method == 3:
            result = detect_method3(
                v, args.epsilon, args.delta,
                span=x.span, t_start=float(x.timestamps[0]), params=record,
            )
        else:
            result = detect_from_surrogate(
                v, args.epsilon, args.delta,
                full_span_end=float(x.timestamps[-1]),
                method=args.method, params=record,
            )
    except ValueError as exc:
        parser.error(str(exc))
    except NoRecurrenceFound as exc:
        _emit(
            {"schema_version": 1, "no_recurrence": True, "message": str(exc),
             "input": args.input},
            args.pretty,
        )
        return EXIT_NO_RECURRENCE
    doc = result_to_dict(result)
    doc["input"] = args.input
    _emit(doc, args.pretty)
    return EXIT_OK


def cmd_diagram(args, parser) -> int:
    _check_method_flags(args, parser)
    x = _load_series(args.input)
    v, record = _build_surrogate(x, args, parser)
    diagram = sublevel_persistence(v)
    doc = diagram_to_dict(diagram)
    doc.update(
        {
            "input": args.input,
            "method": args.method,
            "params": record,
            "surrogate": {
                "timestamps": [float(t) for t in v.timestamps],
                "values": [float(val) for val in v.values],
            },
        }
    )
    _emit(doc, args.pretty)
    return EXIT_OK


def _write_labeled(labeled, name: str, out_dir: Path) -> None:
    write_series_csv(labeled.series, out_dir / f"{name}.csv")
    with open(out_dir / f"{name}.truth.json", "w") as f:
        json.dump(sidecar_to_dict(labeled), f, indent=2)
        f.write("\n")


def cmd_generate(args, parser) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.suite:
        if args.scenario is not None:
            parser.error("give either a scenario file or --suite, not both")
        kwargs = {}
        if args.samples_per_cycle:
            kwargs["samples_per_cycle"] = args.samples_per_cycle
        for section in benchmark_suite(**kwargs):
            labeled = generate(section.spec, section.seed)
            _write_labeled(labeled, section.name, out_dir)
        print(f"wrote 18 sections to {out_dir}", file=sys.stderr)
        return EXIT_OK

    if args.scenario is None:
        parser.error("need a scenario file (or --suite)")
    try:
        with open(args.scenario) as f:
            raw = json.load(f)
    except OSError as exc:
        print(f"error: cannot read {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        spec = ScenarioSpec.from_dict(raw)
    except ScenarioError as exc:
        print(f"error: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_PARSE
    labeled = generate(spec, args.seed)
    name = Path(args.scenario).stem
    _write_labeled(labeled, name, out_dir)
    print(f"wrote {name}.csv and {name}.truth.json to {out_dir}", file=sys.stderr)
    return EXIT_OK


def _load_json(path: Path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from exc


def cmd_evaluate(args, parser) -> int:
    truth_dir = Path(args.truth)
    est_dir = Path(args.estimates)
    truths = {p.name[: -len(".truth.json")]: p
              for p in sorted(truth_dir.glob("*.truth.json"))}
    estimates = {}
    for p in sorted(est_dir.glob("*.json")):
        if p.name.endswith(".truth.json"):
            continue
        name = p.name[: -len(".result.json")] if p.name.endswith(".result.json") \
            else p.stem
        estimates[name] = p
    missing_est = sorted(set(truths) - set(estimates))
    missing_truth = sorted(set(estimates) - set(truths))
    if missing_est or missing_truth:
        if missing_est:
            print(f"error: no estimate for: {', '.join(missing_est)}",
                  file=sys.stderr)
        if missing_truth:
            print(f"error: no ground truth for: {', '.join(missing_truth)}",
                  file=sys.stderr)
        return EXIT_USAGE
    if not truths:
        print("error: no *.truth.json files found", file=sys.stderr)
        return EXIT_USAGE

    from .io import result_from_dict

    pairs = []
    names = []
    for name in sorted(truths):
        labeled = truth_from_sidecar(_load_json(truths[name]))
        est_doc = _load_json(estimates[name])
        if est_doc.get("no_recurrence"):
            result = None
        else:
            try:
                result = result_from_dict(est_doc)
            except (KeyError, ValueError) as exc:
                print(f"error: {estimates[name]}: {exc}", file=sys.stderr)
                return EXIT_PARSE
        pairs.append((labeled, result))
        names.append(name)

    report = evaluate_run(pairs, names)
    if args.boxplot_csv:
        with open(args.boxplot_csv, "w") as f:
            f.write("section,time_index,relative_error\n")
            for section, idx, err in boxplot_rows(report):
                f.write(f"{section},{idx},{err:.17g}\n")
    if args.table:
        print(format_report_table(report))
    else:
        _emit(report.to_dict(), args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycletimes",
        description="Recurrence-time and cycle-length estimation for "
        "multi-variate time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser(
        "detect", help="detect recurrence times in a series CSV"
    )
    _add_detection_args(p_detect)
    p_detect.set_defaults(func=cmd_detect)

    p_diagram = sub.add_parser(
        "diagram", help="emit the surrogate and its persistence diagram"
    )
    _add_detection_args(p_diagram)
    p_diagram.set_defaults(func=cmd_diagram)

    p_gen = sub.add_parser(
        "generate", help="realize a scenario file (or the benchmark suite)"
    )
    p_gen.add_argument("scenario", nargs="?", help="scenario JSON file")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out-dir", required=True)
    p_gen.add_argument("--suite", action="store_true",
                       help="write the 18-section benchmark instead")
    p_gen.add_argument("--samples-per-cycle", type=int,
                       help="override the suite's sampling density")
    p_gen.set_defaults(func=cmd_generate)

    p_eval = sub.add_parser(
        "evaluate", help="score result JSONs against ground-truth sidecars"
    )
    p_eval.add_argument("--estimates", required=True,
                        help="directory of <section>[.result].json files")
    p_eval.add_argument("--truth", required=True,
                        help="directory of <section>.truth.json files")
    p_eval.add_argument("--table", action="store_true",
                        help="print the text table instead of JSON")
    p_eval.add_argument("--boxplot-csv",
                        help="also write per-time relative errors to this CSV")
    p_eval.add_argument("--pretty", action="store_true")
    p_eval.set_defaults(func=cmd_evaluate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # subparser for error messages that mention the right usage line
    sub_actions = [a for a in parser._actions
                   if isinstance(a, argparse._SubParsersAction)]
    sub_parser = sub_actions[0].choices[args.command]
    return args.func(args, sub_parser)


if __name__ == "__main__":
    sys.exit(main())
