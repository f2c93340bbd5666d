"""Match telemetry: periodic score records, balance verdicts, file formats.

A match produces a gamelog, one JSON line per sampling window holding
both sides' scores, their growth since the previous window, the growth
gap, and what the controller did about it. Record zero is the baseline
at time zero, so the growth columns there are zero by definition. The
writer keeps key order and number formatting fixed, which makes reruns
byte-comparable. Everything downstream (balance verdicts, summaries,
curve files) is recomputable from the log alone: the gap column equals
the difference of the growth columns, and each score column equals the
first score plus its growth prefix sum.

A match counts as balanced when a large enough fraction of its records
sits inside the controller's dead band. Unbalanced matches get exactly
one failure tag: "too-slow" when the gap stayed out of band for a long
contiguous stretch (the tier ladder crawled behind the score trend),
otherwise "oscillating" when the controller kept flip-flopping tiers.
The two tests are ordered and the tie-break is total, so no unbalanced
match ever goes untagged.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .dda import DdaState, performance, snapshot_features
from .entities import Team

GAMELOG_FORMAT = "gamelog"
GAMELOG_VERSION = 1
SUMMARY_VERSION = 1

_TIME_EPS = 1e-9

# An out-of-band stretch at least this many windows long reads as the
# controller failing to catch up rather than overreacting.
TOO_SLOW_RUN = 4
# At least this fraction of non-keep decisions reads as overreacting.
OSCILLATION_FRACTION = 0.5


@dataclass(frozen=True)
class GamelogRecord:
    """One sampling window of a match. Side A is the reference side
    (the static opponent in experiments), side B the measured one."""

    index: int
    time: float
    mode: str  # tier side B plays until the next window
    decision: str  # controller decision made at this window, or keep
    p_a: int
    p_b: int
    dp_a: int
    dp_b: int
    alpha: int  # dp_a - dp_b
    level_a: int
    deaths_a: int
    towers_a: int
    level_b: int
    deaths_b: int
    towers_b: int

    def to_json_obj(self) -> dict:
        # explicit order keeps the serialized line stable
        return {
            "index": self.index,
            "time": self.time,
            "mode": self.mode,
            "decision": self.decision,
            "p_a": self.p_a,
            "p_b": self.p_b,
            "dp_a": self.dp_a,
            "dp_b": self.dp_b,
            "alpha": self.alpha,
            "level_a": self.level_a,
            "deaths_a": self.deaths_a,
            "towers_a": self.towers_a,
            "level_b": self.level_b,
            "deaths_b": self.deaths_b,
            "towers_b": self.towers_b,
        }


class MatchLog:
    """Accumulates gamelog records as a match runs.

    Carries the band width and balance threshold the match was run
    with, so a finished log can be judged without outside context.
    """

    def __init__(
        self,
        beta: int = 1,
        threshold: float = 0.7,
        period: float = 15.0,
        fixed_mode: str | None = None,
        opponent: str = "",
        side_b: str = "",
    ) -> None:
        self.beta = beta
        self.threshold = threshold
        self.period = period
        self.fixed_mode = fixed_mode
        # labels describing the matchup, copied into the summary
        self.opponent = opponent
        self.side_b = side_b
        self.records: list[GamelogRecord] = []


def _current_decision(dda_state: DdaState, sim_time: float) -> str:
    """Decision made at exactly this sim time, or keep if the
    controller did not run in this window."""
    if not dda_state.evaluations:
        return "keep"
    last = dda_state.evaluations[-1]
    if abs(last.index * dda_state.evaluation_period - sim_time) <= _TIME_EPS:
        return last.decision.value
    return "keep"


def record(log: MatchLog, world, dda_state: DdaState | None = None) -> MatchLog:
    """Append one sampling-window record for the world's current time.

    Must be called on the log's fixed cadence starting at time zero;
    out-of-order or off-cadence times are rejected.
    """
    now = world.sim_time
    if log.records:
        prev = log.records[-1]
        if now <= prev.time:
            raise ValueError(
                f"gamelog time went backwards: {now} after {prev.time}"
            )
        if abs((now - prev.time) - log.period) > _TIME_EPS:
            raise ValueError(
                f"gamelog records must be {log.period} s apart; "
                f"got {now} after {prev.time}"
            )
    elif abs(now) > _TIME_EPS:
        raise ValueError(f"gamelog must start at time 0, not {now}")

    index = len(log.records)
    snap_a = snapshot_features(world, Team.A, index)
    snap_b = snapshot_features(world, Team.B, index)
    p_a, p_b = performance(snap_a), performance(snap_b)
    dp_a = p_a - log.records[-1].p_a if log.records else 0
    dp_b = p_b - log.records[-1].p_b if log.records else 0

    if dda_state is not None:
        mode = dda_state.current_mode.value
        decision = _current_decision(dda_state, now)
    else:
        mode = log.fixed_mode or ""
        decision = "keep"

    log.records.append(
        GamelogRecord(
            index=index,
            time=now,
            mode=mode,
            decision=decision,
            p_a=p_a,
            p_b=p_b,
            dp_a=dp_a,
            dp_b=dp_b,
            alpha=dp_a - dp_b,
            level_a=snap_a.hero_level,
            deaths_a=snap_a.hero_deaths,
            towers_a=snap_a.towers_destroyed,
            level_b=snap_b.hero_level,
            deaths_b=snap_b.hero_deaths,
            towers_b=snap_b.towers_destroyed,
        )
    )
    return log


def _records_of(log) -> list[GamelogRecord]:
    return log.records if isinstance(log, MatchLog) else list(log)


def classify_balance(log, beta: int, threshold: float) -> tuple[bool, float]:
    """Judge a finished match from its gamelog: the fraction of records
    whose growth gap sits inside the dead band, and whether that
    fraction clears the threshold."""
    records = _records_of(log)
    if not records:
        raise ValueError("cannot classify an empty gamelog")
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    in_band = sum(1 for r in records if abs(r.alpha) <= beta)
    fraction = in_band / len(records)
    return fraction >= threshold, fraction


def failure_tag(log, beta: int) -> str:
    """Why an unbalanced match failed: a long one-sided stretch reads
    as too-slow, persistent flip-flopping as oscillating. When neither
    signature is clear-cut the stronger signal wins, too-slow on a tie,
    so every unbalanced match gets exactly one tag."""
    records = _records_of(log)
    if not records:
        raise ValueError("cannot tag an empty gamelog")
    longest_run = run = 0
    for r in records:
        run = 0 if abs(r.alpha) <= beta else run + 1
        longest_run = max(longest_run, run)
    non_keep = sum(1 for r in records if r.decision != "keep") / len(records)
    if longest_run >= TOO_SLOW_RUN:
        return "too-slow"
    if non_keep >= OSCILLATION_FRACTION:
        return "oscillating"
    if longest_run / TOO_SLOW_RUN >= non_keep / OSCILLATION_FRACTION:
        return "too-slow"
    return "oscillating"


@dataclass(frozen=True)
class MatchSummary:
    """Flat per-match roll-up, one CSV row."""

    seed: int
    opponent: str  # side A's tier
    side_b: str  # "adaptive" or side B's fixed tier
    winner: str  # "A", "B", or "draw"
    end_reason: str
    duration: float
    records: int
    adjustments: int  # decisions that were not keep
    balanced: bool
    balance_fraction: float
    failure: str  # "" when balanced, else too-slow | oscillating
    p_a: int
    p_b: int
    level_a: int
    level_b: int
    deaths_a: int
    deaths_b: int
    towers_a: int
    towers_b: int


def summarize(log: MatchLog, outcome, seed: int) -> MatchSummary:
    """Roll a finished match up into one summary row.

    `outcome` is the ended world (or anything with winner, end_reason
    and sim_time). Balance is judged with the band and threshold the
    log was recorded under.
    """
    records = log.records
    if not records:
        raise ValueError("cannot summarize an empty gamelog")
    if outcome.end_reason is None:
        raise ValueError("cannot summarize an unfinished match")
    last = records[-1]
    balanced, fraction = classify_balance(log, log.beta, log.threshold)
    return MatchSummary(
        seed=seed,
        opponent=log.opponent,
        side_b=log.side_b,
        winner=outcome.winner.value if outcome.winner is not None else "draw",
        end_reason=outcome.end_reason,
        duration=outcome.sim_time,
        records=len(records),
        adjustments=sum(1 for r in records if r.decision != "keep"),
        balanced=balanced,
        balance_fraction=fraction,
        failure="" if balanced else failure_tag(log, log.beta),
        p_a=last.p_a,
        p_b=last.p_b,
        level_a=last.level_a,
        level_b=last.level_b,
        deaths_a=last.deaths_a,
        deaths_b=last.deaths_b,
        towers_a=last.towers_a,
        towers_b=last.towers_b,
    )


SUMMARY_COLUMNS = ("format_version",) + tuple(MatchSummary.__dataclass_fields__)


def summary_row(summary: MatchSummary) -> list:
    row: list = [SUMMARY_VERSION]
    for name in MatchSummary.__dataclass_fields__:
        value = getattr(summary, name)
        if isinstance(value, bool):
            value = "true" if value else "false"
        row.append(value)
    return row


def summary_from_row(row: dict[str, str]) -> MatchSummary:
    """Inverse of summary_row for rows read back through csv."""
    kwargs = {}
    for name, spec in MatchSummary.__dataclass_fields__.items():
        raw = row[name]
        if spec.type == "bool":
            kwargs[name] = raw == "true"
        elif spec.type == "int":
            kwargs[name] = int(raw)
        elif spec.type == "float":
            kwargs[name] = float(raw)
        else:
            kwargs[name] = raw
    return MatchSummary(**kwargs)


def write_summary_csv(path: str | Path, summaries: list[MatchSummary]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for summary in summaries:
            writer.writerow(summary_row(summary))


def read_summary_csv(path: str | Path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for i, row in enumerate(rows, start=2):
        if row.get("format_version") != str(SUMMARY_VERSION):
            raise ValueError(
                f"{path}:{i}: unsupported summary version "
                f"{row.get('format_version')!r}"
            )
    return rows


def gamelog_lines(header: dict, records: list[GamelogRecord]) -> list[str]:
    head = {"format": GAMELOG_FORMAT, "version": GAMELOG_VERSION}
    head.update(header)
    lines = [json.dumps(head, separators=(",", ":"))]
    for rec in records:
        lines.append(json.dumps(rec.to_json_obj(), separators=(",", ":")))
    return lines


def write_gamelog(path: str | Path, header: dict, records: list[GamelogRecord]) -> None:
    text = "\n".join(gamelog_lines(header, records)) + "\n"
    Path(path).write_text(text)


def read_gamelog(path: str | Path) -> tuple[dict, list[dict]]:
    """Parse a gamelog back into (header, record dicts). Errors point
    at the offending line."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path}:1: empty gamelog")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:1: bad gamelog header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != GAMELOG_FORMAT:
        raise ValueError(f"{path}:1: not a gamelog file")
    if header.get("version") != GAMELOG_VERSION:
        raise ValueError(
            f"{path}:1: unsupported gamelog version {header.get('version')!r}"
        )
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: bad gamelog record: {exc}") from exc
    return header, records
