"""Command line entry points.

Subcommands:
  match        play one match and write its gamelog, summary, and curves
  experiment   run a seeded campaign against one static tier
  baseline     run the fixed easy-vs-hard sanity campaign
  report       summarize previously written summary CSVs as a table
  config-dump  print the full default configuration

Output lands in --out, then $LANEBALANCE_OUT, then ./out. Exit codes:
0 success, 2 bad configuration or usage, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dda import DifficultyMode
from .harness import (
    ExperimentSpec,
    emit_curves,
    emit_gamelog,
    emit_table,
    render_table,
    run_experiment,
    run_match,
    table_from_summary_rows,
)
from .settings import (
    ConfigError,
    Settings,
    apply_overrides,
    dump_settings,
    load_settings,
)
from .telemetry import read_summary_csv, write_summary_csv

TIERS = ("easy", "regular", "hard")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a key=value settings file")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one setting (repeatable)",
    )
    parser.add_argument(
        "--out",
        help="output directory (default: $LANEBALANCE_OUT or ./out)",
    )


def _add_dda_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=int, help="controller dead band half-width")
    parser.add_argument(
        "--eval-period", type=float, help="seconds between controller evaluations"
    )
    parser.add_argument(
        "--balance-threshold",
        type=float,
        help="in-band fraction needed to call a match balanced",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lanebalance",
        description="Headless 1v1 lane-pushing simulator with tiered bots "
        "and a dynamic difficulty controller.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="play a single match")
    p_match.add_argument("--seed", type=int, default=1)
    p_match.add_argument("--opponent", choices=TIERS, default="regular",
                         help="static tier for side A")
    p_match.add_argument(
        "--fixed",
        choices=TIERS,
        help="give side B this fixed tier instead of the controller",
    )
    _add_dda_flags(p_match)
    _add_common(p_match)
    p_match.set_defaults(func=_cmd_match)

    p_exp = sub.add_parser("experiment", help="run a campaign against one tier")
    p_exp.add_argument("--opponent", choices=TIERS, required=True)
    p_exp.add_argument("--matches", type=int, default=20)
    p_exp.add_argument("--base-seed", type=int, default=1000)
    p_exp.add_argument(
        "--seeds", help="comma-separated explicit seed list (overrides --base-seed)"
    )
    p_exp.add_argument("--workers", type=int, default=1)
    p_exp.add_argument(
        "--fixed",
        choices=TIERS,
        help="give side B this fixed tier instead of the controller",
    )
    p_exp.add_argument(
        "--no-gamelogs", action="store_true", help="skip per-match gamelog files"
    )
    _add_dda_flags(p_exp)
    _add_common(p_exp)
    p_exp.set_defaults(func=_cmd_experiment)

    p_base = sub.add_parser(
        "baseline", help="fixed easy (side A) versus fixed hard (side B)"
    )
    p_base.add_argument("--matches", type=int, default=20)
    p_base.add_argument("--base-seed", type=int, default=2000)
    p_base.add_argument("--workers", type=int, default=1)
    p_base.add_argument(
        "--no-gamelogs", action="store_true", help="skip per-match gamelog files"
    )
    _add_common(p_base)
    p_base.set_defaults(func=_cmd_baseline)

    p_report = sub.add_parser("report", help="tabulate summary CSVs in the out dir")
    _add_common(p_report)
    p_report.set_defaults(func=_cmd_report)

    p_dump = sub.add_parser("config-dump", help="print the default settings file")
    _add_common(p_dump)
    p_dump.set_defaults(func=_cmd_config_dump)

    return parser


def _settings_from(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config) if args.config else Settings()
    overrides: dict[str, str] = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value
    if getattr(args, "beta", None) is not None:
        overrides["beta"] = str(args.beta)
    if getattr(args, "eval_period", None) is not None:
        overrides["evaluation_period"] = str(args.eval_period)
    if getattr(args, "balance_threshold", None) is not None:
        overrides["balance_threshold"] = str(args.balance_threshold)
    apply_overrides(settings, overrides)
    settings.validate()
    return settings


def _out_dir(args: argparse.Namespace) -> Path:
    out = args.out or os.environ.get("LANEBALANCE_OUT") or "out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cmd_match(args: argparse.Namespace, settings: Settings) -> int:
    out = _out_dir(args)
    fixed = DifficultyMode(args.fixed) if args.fixed else None
    result = run_match(
        settings,
        args.seed,
        DifficultyMode(args.opponent),
        adaptive=fixed is None,
        fixed_tier=fixed,
    )
    stem = f"match_{args.opponent}_{args.seed}"
    gamelog_path = out / f"{stem}.jsonl"
    emit_gamelog(result, gamelog_path)
    write_summary_csv(out / f"{stem}_summary.csv", [result.summary])
    emit_curves(gamelog_path)
    s = result.summary
    outcome = {"A": f"side A ({s.opponent})", "B": f"side B ({s.side_b})"}.get(
        s.winner, "draw: nobody"
    )
    print(
        f"seed {s.seed}: {outcome} won by {s.end_reason} at {s.duration:.1f}s, "
        f"adjustments={s.adjustments}, "
        f"balanced={'yes' if s.balanced else 'no (' + s.failure + ')'}"
    )
    print(f"wrote {gamelog_path}")
    return 0


def _run_campaign(
    args: argparse.Namespace,
    settings: Settings,
    static_tier: DifficultyMode,
    adaptive: bool,
    fixed_tier: DifficultyMode | None,
    label: str,
) -> int:
    out = _out_dir(args)
    seeds = None
    if getattr(args, "seeds", None):
        seeds = tuple(int(part) for part in args.seeds.split(","))
    spec = ExperimentSpec(
        settings=settings,
        static_tier=static_tier,
        matches=args.matches,
        base_seed=args.base_seed,
        seeds=seeds,
        adaptive=adaptive,
        fixed_tier=fixed_tier,
        workers=args.workers,
    )
    report = run_experiment(spec)
    write_summary_csv(out / f"summary_{label}.csv", report.summaries)
    if not args.no_gamelogs:
        for result in report.results:
            emit_gamelog(result, out / f"gamelog_{label}_{result.seed}.jsonl")
    table = render_table([report])
    (out / f"report_{label}.txt").write_text(table)
    emit_table([report], out / f"report_{label}.csv")
    print(table, end="")
    print(f"wrote {out / ('summary_' + label + '.csv')}")
    return 0


def _cmd_experiment(args: argparse.Namespace, settings: Settings) -> int:
    fixed = DifficultyMode(args.fixed) if getattr(args, "fixed", None) else None
    label = args.opponent if fixed is None else f"{args.opponent}_vs_{fixed.value}"
    return _run_campaign(
        args,
        settings,
        DifficultyMode(args.opponent),
        adaptive=fixed is None,
        fixed_tier=fixed,
        label=label,
    )


def _cmd_baseline(args: argparse.Namespace, settings: Settings) -> int:
    args.seeds = None
    return _run_campaign(
        args,
        settings,
        DifficultyMode.EASY,
        adaptive=False,
        fixed_tier=DifficultyMode.HARD,
        label="baseline",
    )


def _cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    out = _out_dir(args)
    paths = sorted(out.glob("summary_*.csv"))
    if not paths:
        print(f"no summary_*.csv files under {out}", file=sys.stderr)
        return 3
    all_rows: list[dict[str, str]] = []
    lines = [
        "campaign             matches  wins_b  win_rate  balanced  too_slow  oscillating"
    ]
    for path in paths:
        rows = read_summary_csv(path)
        if not rows:
            continue
        all_rows.extend(rows)
        label = path.stem.removeprefix("summary_")
        wins = sum(1 for r in rows if r["winner"] == "B")
        balanced = sum(1 for r in rows if r["balanced"] == "true")
        slow = sum(1 for r in rows if r["failure"] == "too-slow")
        osc = sum(1 for r in rows if r["failure"] == "oscillating")
        n = len(rows)
        lines.append(
            f"{label:<19}  {n:>7}  {wins:>6}  {wins / n:>8.2f}  "
            f"{balanced / n:>8.2f}  {slow:>8}  {osc:>11}"
        )
    text = "\n".join(lines) + "\n"
    (out / "report_all.txt").write_text(text)
    table_path = table_from_summary_rows(all_rows, out / "report_all.csv")
    print(text, end="")
    print(f"wrote {table_path}")
    return 0


def _cmd_config_dump(args: argparse.Namespace, settings: Settings) -> int:
    print(dump_settings(settings), end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings_from(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, settings)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
