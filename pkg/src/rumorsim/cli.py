"""Command-line entry points: simulate, evaluate, similarity, export, validate.

Every command reads the same flat config file; most config keys can be
overridden with a flag of the same name.  Exit codes: 0 success, 1 for
configuration or usage problems, 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from .config import GATED_MODELS, load_config
from .errors import ConfigurationError, RumorSimError
from .evaluate import metric_sweep, write_eval_json
from .gated import load_decisions
from .graph import load_edges, load_rumor, load_users, validate
from .similarity import cosine, dice, jaccard
from .simulate import (
    export_frames,
    read_trace_csv,
    rebuild_trace,
    run_trials,
    write_curve_csv,
    write_summary_json,
    write_trace_csv,
)

SIMS_HEADER = ["from_user_id", "to_user_id", "cosine", "jaccard", "dice", "average"]

_OVERRIDE_KEYS = (
    "max_time",
    "trials",
    "seed",
    "model",
    "metric",
    "threshold",
    "evaluation_policy",
    "beta",
    "gamma",
    "theta",
    "ic_default_p",
    "initials",
    "edges_path",
    "users_path",
    "rumor_path",
    "decisions_path",
    "out_dir",
    "metrics",
)


class _UsageError(Exception):
    def __init__(self, message: str, parser: argparse.ArgumentParser):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; we want 1 and no SystemExit
    def error(self, message):
        raise _UsageError(message, self)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rumorsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p_sim = sub.add_parser("simulate", help="run trials; write trace.csv, curve.csv, summary.json")
    p_sim.add_argument("config")
    _add_overrides(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_eval = sub.add_parser("evaluate", help="sweep metrics with the gated algorithm; write eval.json")
    p_eval.add_argument("config")
    _add_overrides(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_sims = sub.add_parser("similarity", help="write per-edge similarity scores to sims.csv")
    p_sims.add_argument("config")
    _add_overrides(p_sims)
    p_sims.set_defaults(func=_cmd_similarity)

    p_exp = sub.add_parser("export", help="render one trial of a trace as DOT frames plus curve.csv")
    p_exp.add_argument("trace")
    p_exp.add_argument("out_dir")
    p_exp.add_argument("--config", required=True, help="config naming the graph files the trace was run on")
    p_exp.add_argument("--trial", type=int, default=0)
    p_exp.set_defaults(func=_cmd_export)

    p_val = sub.add_parser("validate", help="report graph/profile inconsistencies without failing")
    p_val.add_argument("config")
    _add_overrides(p_val)
    p_val.set_defaults(func=_cmd_validate)

    return parser


def _add_overrides(sub: argparse.ArgumentParser) -> None:
    for key in _OVERRIDE_KEYS:
        sub.add_argument("--" + key.replace("_", "-"), dest=key, default=None, metavar="VALUE")


def _overrides(args) -> dict:
    return {key: getattr(args, key) for key in _OVERRIDE_KEYS if getattr(args, key, None) is not None}


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    graph = load_edges(cfg.edges_path)
    profiles = load_users(cfg.users_path)
    rumor = load_rumor(cfg.rumor_path) if cfg.rumor_path else None
    decisions = load_decisions(cfg.decisions_path) if cfg.decisions_path else None
    start = time.perf_counter()
    traces, aggregate = run_trials(cfg, graph, profiles, rumor, decisions)
    runtime = time.perf_counter() - start
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_trace_csv(traces, out / "trace.csv")
    write_curve_csv(aggregate, out / "curve.csv")
    write_summary_json(cfg, traces, aggregate, runtime, out / "summary.json")
    print(
        f"{cfg.trials} trial(s) of {cfg.model.value}: "
        f"mean final diffusers {aggregate[-1]:g} of {len(graph.nodes)} users"
    )
    return 0


def _cmd_evaluate(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    if cfg.model not in GATED_MODELS:
        raise ConfigurationError(
            f"evaluate requires a gated model (gated_user_user or gated_user_content), got {cfg.model.value}"
        )
    graph = load_edges(cfg.edges_path)
    profiles = load_users(cfg.users_path)
    rumor = load_rumor(cfg.rumor_path) if cfg.rumor_path else None
    decisions = load_decisions(cfg.decisions_path) if cfg.decisions_path else None
    rows = metric_sweep(
        graph, profiles, rumor, cfg.initials, cfg.metrics, cfg.threshold, cfg.model, decisions
    )
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_eval_json(rows, cfg.threshold, out / "eval.json")
    best_metric, best = rows[0]
    print(f"best metric {best_metric.value}: accuracy {best.accuracy:.10f} over {best.total} labeled users")
    return 0


def _cmd_similarity(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    graph = load_edges(cfg.edges_path)
    profiles = load_users(cfg.users_path)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sims.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SIMS_HEADER)
        for a, b in sorted(graph.edges):
            pa = profiles.get(a)
            pb = profiles.get(b)
            if pa is None or pb is None:
                c = j = d = avg = 0.0
            else:
                c = cosine(pa.topics, pb.topics)
                j = jaccard(pa.topics, pb.topics)
                d = dice(pa.topics, pb.topics)
                avg = (c + j + d) / 3.0
            writer.writerow([a, b, c, j, d, avg])
    print(f"wrote {len(graph.edges)} edge scores to {path}")
    return 0


def _cmd_export(args) -> int:
    cfg = load_config(args.config)
    graph = load_edges(cfg.edges_path)
    changes = read_trace_csv(args.trace, args.trial)
    trace = rebuild_trace(cfg, graph, changes)
    frames = export_frames(trace, graph, args.out_dir)
    print(f"wrote {len(frames)} DOT frames and curve.csv to {args.out_dir}")
    return 0


def _cmd_validate(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    graph = load_edges(cfg.edges_path)
    profiles = load_users(cfg.users_path)
    report = validate(graph, profiles)
    stats = graph.load_stats
    print(f"{len(graph.nodes)} users, {len(graph.edges)} edges", end="")
    if stats is not None:
        print(f" ({stats.duplicate_edges} duplicate rows, {stats.self_loops_skipped} self-loops dropped)")
    else:
        print()
    _print_findings("edge endpoints without a profile", report.missing_profiles)
    _print_findings("profiles with an empty topic set", report.empty_topics)
    _print_findings("users touching no edge", report.isolated_nodes)
    if report.is_empty:
        print("inputs are consistent")
    return 0


def _print_findings(label: str, ids) -> None:
    if ids:
        shown = ", ".join(str(u) for u in ids[:20])
        more = f" (+{len(ids) - 20} more)" if len(ids) > 20 else ""
        print(f"{label}: {len(ids)} [{shown}{more}]")


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        exc.parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RumorSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        filename = getattr(exc, "filename", None)
        detail = f"{exc.strerror}: {filename}" if filename else str(exc)
        print(f"io error: {detail}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run_cli())
