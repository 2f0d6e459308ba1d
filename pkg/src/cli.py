#!/usr/bin/env python3
"""
Command-line entry point.

    ledger-sentinel gen --accounts 20 --records 500 --out data/ledgers/demo.csv
    ledger-sentinel train --data data/ledgers/demo.csv --out data/models/demo.lsnt
    ledger-sentinel eval --model data/models/demo.lsnt --data data/ledgers/demo.csv
    ledger-sentinel sweep --heads 1,2,4,8 --data data/ledgers/demo.csv
    ledger-sentinel score --model data/models/demo.lsnt < stream.jsonl
    ledger-sentinel gradcheck
"""
import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Callable, Optional, Sequence

from src.config.settings import settings
from src.core.data import (
    AnomalyPattern,
    RecordFormat,
    generate_synthetic,
    ingest,
    prepare_dataset,
    split_windows,
    write_records,
)
from src.core.evaluation import ReportFormat, emit_report, evaluate, render_csv
from src.core.evaluation.sweep import SWEEPABLE, head_sweep, parameter_sweep
from src.core.exceptions import ConfigError, SentinelError
from src.core.training import gradient_check, load_model, save_model, score_windows, train
from src.models.config import ExperimentConfig
from src.utils.file_manager import file_manager
from src.utils.logger import logger

EXIT_OK = 0
EXIT_FAILURE = 1

GRADCHECK_TOLERANCE = 1e-4


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _number_list(text: str) -> list[float]:
    try:
        return [float(v) if any(c in v for c in ".eE") else int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _pattern_list(text: str) -> list[AnomalyPattern]:
    try:
        return [AnomalyPattern(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        choices = ", ".join(p.value for p in AnomalyPattern)
        raise argparse.ArgumentTypeError(f"patterns must be among {choices}")


def _report_format(path: Optional[Path], fmt: Optional[str]) -> ReportFormat:
    if fmt:
        return ReportFormat(fmt)
    if path is not None and path.suffix.lower() == ".csv":
        return ReportFormat.CSV
    return ReportFormat.JSON


# ============================================================================
# Commands
# ============================================================================

def cmd_gen(args: argparse.Namespace) -> int:
    records = generate_synthetic(
        n_accounts=args.accounts,
        records_per_account=args.records,
        anomaly_rate=args.anomaly_rate,
        seed=args.seed,
        patterns=args.patterns,
    )
    out = args.out or file_manager.get_ledger_path(args.seed)
    count = write_records(records, out, RecordFormat.from_path(out))
    print(f"✓ Wrote {count} records to {out}")
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    experiment = ExperimentConfig.from_file(args.config)
    records = ingest(args.data, skip_bad=args.skip_bad)
    dataset = prepare_dataset(records, experiment.model, experiment.data)

    params, report = train(dataset.splits, dataset.model_config, experiment.train)
    out = args.out or file_manager.get_model_path()
    save_model(params, dataset.encoder, out, threshold=report.threshold)

    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(json.dumps(asdict(report), indent=2) + "\n", encoding="utf-8")
        logger.info(f"✓ Wrote training report to {args.report}")

    if report.best_validation_auc is not None:
        print(
            f"✓ Trained {report.epochs_run} epoch(s); best epoch {report.best_epoch}, "
            f"validation AUC {report.best_validation_auc:.6f}, threshold {report.threshold:.6f}"
        )
    else:
        print(f"✓ Trained {report.epochs_run} epoch(s)")
    print(f"  Model: {out}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    bundle = load_model(args.model)
    experiment = ExperimentConfig.from_file(args.config)
    records = ingest(args.data, skip_bad=args.skip_bad)
    splits = split_windows(records, bundle.encoder, bundle.config.T, experiment.data)

    windows = splits.test if args.split == "test" else splits.train + splits.validation + splits.test
    threshold = args.threshold if args.threshold is not None else bundle.threshold
    if threshold is None:
        raise ConfigError("model file stores no threshold; pass --threshold")

    metrics = evaluate(score_windows(bundle.params, windows), threshold=threshold, model=args.name)
    fmt = _report_format(args.report, args.format)
    if args.report:
        emit_report(metrics, fmt, args.report)
    print(render_csv(metrics), end="")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    experiment = ExperimentConfig.from_file(args.config)
    records = ingest(args.data, skip_bad=args.skip_bad)
    dataset = prepare_dataset(records, experiment.model, experiment.data)

    if args.heads is not None:
        result = head_sweep(dataset, dataset.model_config, experiment.train, args.heads)
    else:
        result = parameter_sweep(
            dataset, dataset.model_config, experiment.train, args.param, args.values
        )

    fmt = _report_format(args.report, args.format)
    report_path = args.report or file_manager.get_report_path(f"sweep_{result.parameter}", f".{fmt.value}")
    emit_report(result, fmt, report_path)
    print(render_csv(result), end="")
    print(f"✓ Best {result.parameter}={result.best}")
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    model = args.model or file_manager.latest_model()
    if model is None:
        raise ConfigError(f"no --model given and none found in {settings.model_dir}")

    if args.http:
        from src.web.app import run_http_server

        return run_http_server(model, args.http, args.threshold, args.explain)
    if args.listen:
        from src.core.serving.tcp import run_tcp_listener

        return run_tcp_listener(model, args.listen, args.threshold, args.explain)

    from src.core.serving.stdin_loop import run_stdin_loop

    return run_stdin_loop(model, args.threshold, args.explain)


def cmd_gradcheck(args: argparse.Namespace) -> int:
    worst = 0.0
    for seed in range(args.seeds):
        report = gradient_check(seed=seed)
        worst = max(worst, report.max_error)
        print(f"  seed {seed}: max relative error {report.max_error:.3e} ({report.worst})")

    passed = worst <= args.tolerance
    mark = "✓" if passed else "✗"
    print(f"{mark} Max relative error {worst:.3e} (tolerance {args.tolerance:.0e})")
    return EXIT_OK if passed else EXIT_FAILURE


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ledger-sentinel",
        description="Attention-based anomaly detection over account transaction streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a labeled synthetic ledger")
    gen.add_argument("--accounts", type=int, default=20)
    gen.add_argument("--records", type=int, default=500, help="Records per account")
    gen.add_argument("--anomaly-rate", type=float, default=0.05)
    gen.add_argument("--seed", type=int, default=settings.default_seed)
    gen.add_argument("--patterns", type=_pattern_list, default=None,
                     help="Comma-separated subset of amount_spike,burst,off_hours,structuring")
    gen.add_argument("--out", type=Path, default=None, help="CSV or JSONL path")
    gen.set_defaults(handler=cmd_gen)

    tr = sub.add_parser("train", help="Train a model on a ledger file")
    tr.add_argument("--data", type=Path, required=True)
    tr.add_argument("--config", type=Path, default=None, help="Experiment config JSON")
    tr.add_argument("--out", type=Path, default=None, help="Model file path")
    tr.add_argument("--report", type=Path, default=None, help="Write the training history as JSON")
    tr.add_argument("--skip-bad", action="store_true", help="Drop bad rows instead of failing")
    tr.set_defaults(handler=cmd_train)

    ev = sub.add_parser("eval", help="Evaluate a trained model on a ledger file")
    ev.add_argument("--model", type=Path, required=True)
    ev.add_argument("--data", type=Path, required=True)
    ev.add_argument("--config", type=Path, default=None, help="Experiment config JSON (data section)")
    ev.add_argument("--report", type=Path, default=None)
    ev.add_argument("--format", choices=[f.value for f in ReportFormat], default=None)
    ev.add_argument("--threshold", type=float, default=None,
                    help="Decision threshold (default: the one stored in the model)")
    ev.add_argument("--split", choices=["test", "all"], default="test",
                    help="Score the chronological test portion or every window")
    ev.add_argument("--name", default="ours", help="Model name in the report row")
    ev.add_argument("--skip-bad", action="store_true")
    ev.set_defaults(handler=cmd_eval)

    sw = sub.add_parser("sweep", help="Hyperparameter sensitivity sweep")
    target = sw.add_mutually_exclusive_group(required=True)
    target.add_argument("--heads", type=_int_list, help="Comma-separated head counts, e.g. 1,2,4,8")
    target.add_argument("--param", choices=SWEEPABLE, help="Model hyperparameter to sweep")
    sw.add_argument("--values", type=_number_list, help="Comma-separated values for --param")
    sw.add_argument("--data", type=Path, required=True)
    sw.add_argument("--config", type=Path, default=None)
    sw.add_argument("--report", type=Path, default=None)
    sw.add_argument("--format", choices=[f.value for f in ReportFormat], default=None)
    sw.add_argument("--skip-bad", action="store_true")
    sw.set_defaults(handler=cmd_sweep)

    sc = sub.add_parser("score", help="Score a record stream (stdin, TCP or HTTP)")
    sc.add_argument("--model", type=Path, default=None, help="Model file (default: newest)")
    surface = sc.add_mutually_exclusive_group()
    surface.add_argument("--listen", metavar="ADDR", nargs="?", const=f"{settings.serve_host}:{settings.serve_port}",
                         help="Serve the line protocol on HOST:PORT")
    surface.add_argument("--http", metavar="ADDR", nargs="?", const=f"{settings.serve_host}:{settings.http_port}",
                         help="Serve /health and /score on HOST:PORT")
    sc.add_argument("--threshold", type=float, default=None)
    sc.add_argument("--explain", action="store_true", help="Attach per-timestep attention")
    sc.set_defaults(handler=cmd_score)

    gc = sub.add_parser("gradcheck", help="Check analytic gradients against finite differences")
    gc.add_argument("--seeds", type=int, default=5)
    gc.add_argument("--tolerance", type=float, default=GRADCHECK_TOLERANCE)
    gc.set_defaults(handler=cmd_gradcheck)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "sweep" and args.param and not args.values:
        parser.error("--param needs --values")

    settings.ensure_directories()
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except SentinelError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
