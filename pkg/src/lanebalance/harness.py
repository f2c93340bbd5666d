"""Runs matches and experiment campaigns, and shapes their outputs.

A match pairs a static-tier hero (side A) against either the adaptive
controller or a second fixed tier (side B). The per-tick order is
fixed: controller evaluation first, then the telemetry record, then
both policies decide on the same observations, then the world steps.
Both cadences are whole numbers of ticks, so sampling times are exact
and a rerun of the same seed writes byte-identical files.

Experiments run a seed list through identical match setups and roll
the results up. Matches are independent worlds with their own
generators, so a campaign gives the same report serial or parallel.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .dda import DdaState, DifficultyMode, Evaluation, evaluate_tick
from .entities import Team
from .settings import ConfigError, Settings
from .telemetry import (
    GamelogRecord,
    MatchLog,
    MatchSummary,
    read_gamelog,
    record,
    summarize,
    write_gamelog,
)
from .world import new_world, observe, step
from . import agents


@dataclass(frozen=True)
class MatchResult:
    seed: int
    summary: MatchSummary
    records: tuple[GamelogRecord, ...]
    evaluations: tuple[Evaluation, ...]
    digest: str

    def gamelog_header(self) -> dict:
        s = self.summary
        return {
            "seed": self.seed,
            "opponent": s.opponent,
            "side_b": s.side_b,
            "winner": s.winner,
            "end_reason": s.end_reason,
            "duration": s.duration,
            "digest": self.digest,
        }


def _cadence_ticks(period: float, tick_length: float, name: str) -> int:
    ticks = round(period / tick_length)
    if ticks < 1 or abs(ticks * tick_length - period) > 1e-9:
        raise ConfigError(
            f"{name} ({period}) must be a positive multiple of "
            f"tick_length ({tick_length})"
        )
    return ticks


def run_match(
    settings: Settings,
    seed: int,
    static_tier: DifficultyMode,
    adaptive: bool = True,
    fixed_tier: DifficultyMode | None = None,
) -> MatchResult:
    """Play one match to the end and summarize it.

    Side A always plays static_tier. Side B follows the controller
    when adaptive is true, otherwise fixed_tier (defaulting to
    static_tier for a mirror match).
    """
    settings.validate()
    tick_length = settings.world.tick_length
    eval_every = _cadence_ticks(
        settings.dda.evaluation_period, tick_length, "evaluation_period"
    )
    log_every = _cadence_ticks(
        settings.telemetry.log_period, tick_length, "log_period"
    )

    world = new_world(settings, seed)
    behavior = settings.behavior
    controller: DdaState | None = None
    if adaptive:
        controller = DdaState(
            beta=settings.dda.beta,
            current_mode=DifficultyMode(settings.dda.initial_mode),
            evaluation_period=settings.dda.evaluation_period,
        )
    side_b_fixed = fixed_tier if fixed_tier is not None else static_tier
    log = MatchLog(
        beta=settings.dda.beta,
        threshold=settings.telemetry.balance_threshold,
        period=settings.telemetry.log_period,
        fixed_mode=None if adaptive else side_b_fixed.value,
        opponent=static_tier.value,
        side_b="adaptive" if adaptive else side_b_fixed.value,
    )

    def sample(tick: int) -> None:
        if controller is not None and tick % eval_every == 0:
            evaluate_tick(controller, world)
        if tick % log_every == 0:
            record(log, world, controller)

    while world.end_reason is None:
        sample(world.tick)
        mode_b = controller.current_mode if controller is not None else side_b_fixed
        action_a = agents.decide(observe(world, Team.A), static_tier, behavior)
        action_b = agents.decide(observe(world, Team.B), mode_b, behavior)
        step(world, {Team.A: action_a, Team.B: action_b})
    # a closing sample only when the end lands exactly on a cadence;
    # record spacing stays uniform either way
    sample(world.tick)

    return MatchResult(
        seed=seed,
        summary=summarize(log, world, seed),
        records=tuple(log.records),
        evaluations=tuple(controller.evaluations) if controller is not None else (),
        digest=world.digest(),
    )


@dataclass(frozen=True)
class ExperimentSpec:
    settings: Settings
    static_tier: DifficultyMode
    matches: int = 20
    base_seed: int = 1000
    seeds: tuple[int, ...] | None = None
    adaptive: bool = True
    fixed_tier: DifficultyMode | None = None
    workers: int = 1

    def resolved_seeds(self) -> tuple[int, ...]:
        if self.seeds is not None:
            seeds = self.seeds
        else:
            seeds = tuple(self.base_seed + i for i in range(self.matches))
        if not seeds:
            raise ValueError("an experiment needs at least one match")
        if len(set(seeds)) != len(seeds):
            dupes = sorted({s for s in seeds if seeds.count(s) > 1})
            raise ValueError(f"seeds must be pairwise distinct; repeated: {dupes}")
        return seeds


@dataclass(frozen=True)
class ExperimentReport:
    opponent: str
    side_b: str
    seeds: tuple[int, ...]
    results: tuple[MatchResult, ...]

    @property
    def matches(self) -> int:
        return len(self.results)

    @property
    def wins_b(self) -> int:
        return sum(1 for r in self.results if r.summary.winner == "B")

    @property
    def wins_a(self) -> int:
        return sum(1 for r in self.results if r.summary.winner == "A")

    @property
    def draws(self) -> int:
        return sum(1 for r in self.results if r.summary.winner == "draw")

    @property
    def win_rate_b(self) -> float:
        return self.wins_b / self.matches if self.matches else 0.0

    @property
    def balanced_fraction(self) -> float:
        if not self.results:
            return 0.0
        return sum(1 for r in self.results if r.summary.balanced) / self.matches

    @property
    def failure_counts(self) -> dict[str, int]:
        counts = {"too-slow": 0, "oscillating": 0}
        for r in self.results:
            if r.summary.failure:
                counts[r.summary.failure] += 1
        return counts

    @property
    def summaries(self) -> list[MatchSummary]:
        return [r.summary for r in self.results]


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run every seed of a campaign and aggregate. Results come back
    in seed order regardless of worker count; any failing match aborts
    the campaign naming its seed."""
    seeds = spec.resolved_seeds()

    def run_one(seed: int) -> MatchResult:
        try:
            return run_match(
                spec.settings,
                seed,
                spec.static_tier,
                adaptive=spec.adaptive,
                fixed_tier=spec.fixed_tier,
            )
        except Exception as exc:
            raise RuntimeError(f"match with seed {seed} failed: {exc}") from exc

    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            results = tuple(pool.map(run_one, seeds))
    else:
        results = tuple(run_one(seed) for seed in seeds)
    side_b = "adaptive" if spec.adaptive else (
        spec.fixed_tier.value if spec.fixed_tier is not None else spec.static_tier.value
    )
    return ExperimentReport(
        opponent=spec.static_tier.value,
        side_b=side_b,
        seeds=seeds,
        results=results,
    )


# --- output shaping ----------------------------------------------------

def emit_gamelog(result: MatchResult, path: str | Path) -> None:
    write_gamelog(path, result.gamelog_header(), list(result.records))


_CURVE_FIELDS = ("time", "p_a", "p_b", "dp_a", "dp_b", "alpha", "decision", "mode")


def emit_curves(gamelog_path: str | Path, out_dir: str | Path | None = None) -> list[Path]:
    """Rebuild the plot-ready curve files from a gamelog on disk: score
    growth per side, running scores, and the growth gap with the
    controller's moves. One row per gamelog record."""
    gamelog_path = Path(gamelog_path)
    _, records = read_gamelog(gamelog_path)
    for lineno, rec in enumerate(records, start=2):
        missing = [f for f in _CURVE_FIELDS if f not in rec]
        if missing:
            raise ValueError(
                f"{gamelog_path}:{lineno}: record missing fields {missing}"
            )
    out = Path(out_dir) if out_dir is not None else gamelog_path.parent
    out.mkdir(parents=True, exist_ok=True)
    stem = gamelog_path.stem
    deltas = out / f"{stem}_deltas.csv"
    scores = out / f"{stem}_scores.csv"
    gap = out / f"{stem}_alpha.csv"
    with open(deltas, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("time", "dp_a", "dp_b"))
        for rec in records:
            writer.writerow((rec["time"], rec["dp_a"], rec["dp_b"]))
    with open(scores, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("time", "p_a", "p_b"))
        for rec in records:
            writer.writerow((rec["time"], rec["p_a"], rec["p_b"]))
    with open(gap, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("time", "alpha", "decision", "mode"))
        for rec in records:
            writer.writerow((rec["time"], rec["alpha"], rec["decision"], rec["mode"]))
    return [deltas, scores, gap]


TABLE_COLUMNS = ("opponent", "matches", "wins_b", "losses_b", "draws", "balanced_fraction")


def _table_line(opponent: str, outcomes: list[tuple[str, bool]]) -> list:
    wins = sum(1 for winner, _ in outcomes if winner == "B")
    losses = sum(1 for winner, _ in outcomes if winner == "A")
    draws = sum(1 for winner, _ in outcomes if winner == "draw")
    balanced = sum(1 for _, ok in outcomes if ok)
    frac = balanced / len(outcomes) if outcomes else 0.0
    return [opponent, len(outcomes), wins, losses, draws, f"{frac:.4f}"]


def emit_table(reports: list[ExperimentReport], path: str | Path) -> Path:
    """Campaign results as CSV, one row per opponent tier."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for report in reports:
            outcomes = [(s.winner, s.balanced) for s in report.summaries]
            writer.writerow(_table_line(report.opponent, outcomes))
    return path


def table_from_summary_rows(rows: list[dict[str, str]], path: str | Path) -> Path:
    """Rebuild the same campaign table from stored summary CSV rows,
    grouped by opponent in first-seen order."""
    by_tier: dict[str, list[tuple[str, bool]]] = {}
    for row in rows:
        by_tier.setdefault(row["opponent"], []).append(
            (row["winner"], row["balanced"] == "true")
        )
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        for opponent, outcomes in by_tier.items():
            writer.writerow(_table_line(opponent, outcomes))
    return path


def render_table(reports: list[ExperimentReport]) -> str:
    """Plain-text campaign table for terminal output."""
    header = (
        "opponent",
        "side_b",
        "matches",
        "wins_b",
        "win_rate_b",
        "balanced",
        "too_slow",
        "oscillating",
    )
    rows = [header]
    for report in reports:
        failures = report.failure_counts
        rows.append(
            (
                report.opponent,
                report.side_b,
                str(report.matches),
                str(report.wins_b),
                f"{report.win_rate_b:.2f}",
                f"{report.balanced_fraction:.2f}",
                str(failures["too-slow"]),
                str(failures["oscillating"]),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines) + "\n"
