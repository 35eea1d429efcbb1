"""Command-line entry point: ``python -m eop_report <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .config import settings
from .config.loader import METRICS, PipelineConfig, ReportConfig
from .core.estimator import ValueSample, eop_plugin, eop_without_replacement
from .core.metrics import ValueMap, normalize_values, spearman_rho
from .core.records import AGGREGATIONS, aggregate_runs
from .core.selection import ScoreTable, SelectionStrategy, regret_curves
from .data.csv_files import emit_curve, parse_curve, parse_ranking, parse_runs, parse_scores, write_runs, write_scores
from .ui.console import setup_logging

logger = logging.getLogger(__name__)


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _int_csv_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in _csv_list(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _file_stem(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


# --- argument parsing ---

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raises on bad arguments so ``main`` can report them on one line."""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="eop-report",
        description="Expected online performance reports for offline RL policy selection.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log warnings and errors")
    sub = parser.add_subparsers(dest="command", required=True)

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--config", help="key = value configuration file")
    report.add_argument("--seed", type=int, dest="master_seed", help="master seed")
    report.add_argument("--budget-max", type=int, dest="budget_max", help="largest budget B (default: N)")
    report.add_argument("--metric", choices=METRICS, help="value transform (default: raw)")
    report.add_argument("--offset", type=float, help="return shift for best-behavioral")
    report.add_argument("--v-best", type=float, dest="v_best", help="best behavioral policy value")
    report.add_argument("--aggregate", choices=AGGREGATIONS, dest="aggregation", help="seed reduction (default: mean)")
    report.add_argument("--out-dir", dest="output_dir", help="output directory (default: .)")

    p = sub.add_parser("curve", parents=[report], help="EOP curve per (environment, algorithm)")
    p.add_argument("runs", nargs="?", help="runs file")
    p.add_argument("--without-replacement", action="store_true", help="exact curve for distinct picks")
    p.add_argument("--figure", help="also write an SVG figure of all curves")

    p = sub.add_parser("regret", parents=[report], help="regret@b curve per selection strategy")
    p.add_argument("runs", nargs="?", help="runs file")
    p.add_argument("--scores", help="scores file of one (environment, algorithm)")
    p.add_argument("--strategies", type=_csv_list, help="comma-separated; 'uniform' or score methods")
    p.add_argument("--environment", help="environment whose values the scores rank")
    p.add_argument("--algorithm", help="algorithm whose values the scores rank")
    p.add_argument("--without-replacement", action="store_true", help="simulate uniform picks without replacement")
    p.add_argument("--figure", help="also write an SVG figure of all curves")

    p = sub.add_parser("table", parents=[report], help="budget table of expected best returns")
    p.add_argument("runs", nargs="?", help="runs file")
    p.add_argument("--budgets", type=_int_csv_list, help="comma-separated budgets")

    p = sub.add_parser("spearman", help="rank correlation against a reference ranking")
    p.add_argument("reference", help="ranking file (policy_id,rank)")
    p.add_argument("rankings", nargs="+", help="ranking files to compare")

    p = sub.add_parser("plot", help="SVG figure of curve files")
    p.add_argument("curves", nargs="+", help="curve files")
    p.add_argument("--labels", type=_csv_list, help="legend labels (default: file names)")
    p.add_argument("-o", "--output", required=True, help="SVG file to write")

    p = sub.add_parser("simulate", help="run the tabular testbed and write runs + scores")
    p.add_argument("--config", help="key = value pipeline configuration")
    p.add_argument("--seed", type=int, dest="master_seed", help="master seed")
    p.add_argument("--out-dir", dest="output_dir", default=".", help="output directory")

    p = sub.add_parser("import-neorl", help="convert NeoRL benchmark results into a runs file")
    p.add_argument("source", help="local JSON file or http(s) URL")
    p.add_argument("--environment", help="keep only this task")
    p.add_argument("--algorithms", type=_csv_list, help="keep only these algorithms")
    p.add_argument("-o", "--output", required=True, help="runs file to write")
    return parser


def _report_config(args: argparse.Namespace) -> ReportConfig:
    fields = ("runs", "scores", "metric", "v_best", "offset", "aggregation", "budget_max",
              "strategies", "output_dir", "master_seed", "environment", "algorithm", "budgets")
    overrides = {name: getattr(args, name, None) for name in fields}
    if overrides["scores"] is not None:
        overrides["scores"] = (overrides["scores"],)
    if getattr(args, "without_replacement", False):
        overrides["replacement"] = False
    if args.config:
        return ReportConfig.from_file(args.config, **overrides)
    return ReportConfig().replace(**overrides)


def _require_runs(config: ReportConfig) -> str:
    if not config.runs:
        raise ValueError("no runs file given")
    return config.runs


# --- subcommands ---

def cmd_curve(args: argparse.Namespace) -> int:
    config = _report_config(args)
    values = aggregate_runs(parse_runs(_require_runs(config)), config.aggregation)
    out_dir = Path(config.output_dir)
    several_envs = len({env for env, _ in values}) > 1
    curves = {}
    for (env, alg), value_map in values.items():
        value_map = normalize_values(value_map, config.metric, config.v_best, config.offset)
        sample = ValueSample.from_values(value_map.values.values(), label=alg)
        budget = config.budget_max or sample.n
        if config.replacement:
            curve = eop_plugin(sample, budget)
        else:
            curve = eop_without_replacement(sample, budget)
        path = emit_curve(curve, out_dir / f"curve-{_file_stem(env)}-{_file_stem(alg)}.csv")
        curves[f"{env}/{alg}" if several_envs else alg] = curve
        logger.info("wrote %s (N=%d, B=%d)", path, sample.n, len(curve))
    if args.figure:
        _emit_figure(curves, args.figure)
    return 0


def _values_for_scores(values: dict[tuple[str, str], ValueMap], table: ScoreTable, config: ReportConfig) -> ValueMap:
    ids = set(table.policy_ids)
    candidates = [
        vm for (env, alg), vm in values.items()
        if set(vm.ids) == ids
        and (config.environment is None or env == config.environment)
        and (config.algorithm is None or alg == config.algorithm)
    ]
    if not candidates:
        raise ValueError("no runs match the scored policies")
    if len(candidates) > 1:
        raise ValueError("several runs groups match the scored policies; pass --environment/--algorithm")
    return candidates[0]


def cmd_regret(args: argparse.Namespace) -> int:
    config = _report_config(args)
    if not config.scores:
        raise ValueError("no scores file given")
    values = aggregate_runs(parse_runs(_require_runs(config)), config.aggregation)
    tables = parse_scores(config.scores[0])
    value_map = _values_for_scores(values, tables[0], config)

    names = config.strategies or ("uniform", *tables[0].methods)
    strategies = [SelectionStrategy.parse(name, config.master_seed) for name in names]
    budget = config.budget_max or len(value_map)
    curves = regret_curves(tables, value_map, strategies, budget, replacement=config.replacement)

    out_dir = Path(config.output_dir)
    for label, curve in curves.items():
        path = emit_curve(curve, out_dir / f"regret-{_file_stem(label)}.csv")
        logger.info("wrote %s", path)
    if args.figure:
        _emit_figure(curves, args.figure)
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    from .ui.table import format_table, rows_from_values

    config = _report_config(args)
    values = aggregate_runs(parse_runs(_require_runs(config)), config.aggregation)
    values = {
        key: normalize_values(vm, config.metric, config.v_best, config.offset) for key, vm in values.items()
    }
    budgets = config.budgets or settings.DEFAULT_TABLE_BUDGETS
    sys.stdout.write(format_table(rows_from_values(values, budgets), budgets))
    return 0


def cmd_spearman(args: argparse.Namespace) -> int:
    reference = parse_ranking(args.reference)
    for path in args.rankings:
        rho = spearman_rho(reference, parse_ranking(path))
        print(f"{rho:.2f}")
    return 0


def _emit_figure(curves, path: str) -> None:
    from .ui.figure import emit_figure

    logger.info("wrote %s", emit_figure(curves, path))


def cmd_plot(args: argparse.Namespace) -> int:
    labels = args.labels or ()
    if labels and len(labels) != len(args.curves):
        raise ValueError(f"{len(labels)} labels for {len(args.curves)} curve files")
    curves = [
        parse_curve(path, labels[i] if labels else None) for i, path in enumerate(args.curves)
    ]
    _emit_figure(curves, args.output)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    from .core.testbed.controller import run_pipeline

    if args.config:
        config = PipelineConfig.from_file(args.config, master_seed=args.master_seed)
    else:
        config = PipelineConfig().replace(master_seed=args.master_seed)
    result = run_pipeline(config)

    out_dir = Path(args.output_dir)
    write_runs(result.runs, out_dir / "runs.csv")
    for (env, alg), tables in sorted(result.scores.items()):
        write_scores(tables, out_dir / f"scores-{_file_stem(env)}-{_file_stem(alg)}.csv")
    logger.info("wrote %d runs and %d scores files to %s", len(result.runs), len(result.scores), out_dir)
    return 0


def cmd_import_neorl(args: argparse.Namespace) -> int:
    from .data.neorl_client import import_neorl

    records = import_neorl(args.source, args.environment, args.algorithms)
    if not records:
        raise ValueError("no NeoRL results left after filtering")
    logger.info("wrote %s (%d runs)", write_runs(records, args.output), len(records))
    return 0


COMMANDS = {
    "curve": cmd_curve,
    "regret": cmd_regret,
    "table": cmd_table,
    "spearman": cmd_spearman,
    "plot": cmd_plot,
    "simulate": cmd_simulate,
    "import-neorl": cmd_import_neorl,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging(-1 if args.quiet else args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
