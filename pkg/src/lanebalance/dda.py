"""Difficulty controller built on a score trend comparison.

Each side of a match is reduced to one integer score: hero level minus
hero deaths plus towers destroyed. The controller watches how fast each
side's score grows between evaluations. When the static side's growth
outpaces the adaptive side's by more than a dead band, the adaptive
side moves up one tier; when it lags by more than the band, one tier
down; inside the band (boundary included) nothing changes. Tiers move
one level per evaluation, never two, so a losing streak cannot
slingshot the bot from its floor to its ceiling in one step.

All quantities here are small integers, which keeps the comparison
exact: there is no smoothing, no decay, and no float drift to reason
about. The state is deliberately tiny (two previous snapshots and the
current tier) so the controller can be replayed from a gamelog.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .entities import Team


class DifficultyMode(Enum):
    """Behavior tiers, ordered from weakest to strongest."""

    EASY = "easy"
    REGULAR = "regular"
    HARD = "hard"

    @property
    def rank(self) -> int:
        return _MODE_ORDER.index(self)

    def raised(self) -> "DifficultyMode":
        """One tier up, clamped at the top."""
        return _MODE_ORDER[min(self.rank + 1, len(_MODE_ORDER) - 1)]

    def lowered(self) -> "DifficultyMode":
        """One tier down, clamped at the bottom."""
        return _MODE_ORDER[max(self.rank - 1, 0)]


_MODE_ORDER = (DifficultyMode.EASY, DifficultyMode.REGULAR, DifficultyMode.HARD)


class Adjustment(Enum):
    INCREASE = "increase"
    KEEP = "keep"
    DECREASE = "decrease"


@dataclass(frozen=True)
class FeatureSnapshot:
    """One side's scoring features at one evaluation point."""

    index: int  # evaluation counter, consecutive per match
    player: str
    hero_level: int
    hero_deaths: int
    towers_destroyed: int


def performance_value(hero_level: int, hero_deaths: int, towers_destroyed: int) -> int:
    """Score a side: levels reward farming, deaths punish feeding,
    towers reward map pressure. Deliberately coarse and integer."""
    return hero_level - hero_deaths + towers_destroyed


def performance(snap: FeatureSnapshot) -> int:
    return performance_value(snap.hero_level, snap.hero_deaths, snap.towers_destroyed)


def delta_performance(curr: FeatureSnapshot, prev: FeatureSnapshot) -> int:
    """Score growth across two consecutive snapshots of one player."""
    if curr.player != prev.player:
        raise ValueError(
            f"snapshots describe different players: {curr.player!r} vs {prev.player!r}"
        )
    if curr.index != prev.index + 1:
        raise ValueError(
            f"snapshots are not consecutive: index {prev.index} then {curr.index}"
        )
    return performance(curr) - performance(prev)


def alpha(static_growth: int, adaptive_growth: int) -> int:
    """How much the static side outgrew the adaptive side."""
    return static_growth - adaptive_growth


def decide_adjustment(
    alpha_value: int, beta: int, current: DifficultyMode
) -> tuple[Adjustment, DifficultyMode]:
    """Map a growth gap onto a one-tier move. The band is closed: a gap
    exactly at the threshold keeps the current tier. At the ladder ends
    the decision is still reported even though the tier cannot move."""
    if beta < 1:
        raise ValueError(f"beta must be a positive integer, got {beta}")
    if alpha_value > beta:
        return Adjustment.INCREASE, current.raised()
    if alpha_value < -beta:
        return Adjustment.DECREASE, current.lowered()
    return Adjustment.KEEP, current


@dataclass(frozen=True)
class Evaluation:
    """One controller decision and the numbers that produced it."""

    index: int
    static_growth: int
    adaptive_growth: int
    alpha: int
    decision: Adjustment
    mode_before: DifficultyMode
    mode_after: DifficultyMode


@dataclass
class DdaState:
    """Controller memory between evaluations."""

    beta: int = 1
    current_mode: DifficultyMode = DifficultyMode.REGULAR
    evaluation_period: float = 15.0
    static_team: Team = Team.A
    adaptive_team: Team = Team.B
    prev_static: FeatureSnapshot | None = None
    prev_adaptive: FeatureSnapshot | None = None
    evaluations: list[Evaluation] = field(default_factory=list)

    @property
    def alpha_history(self) -> list[tuple[int, int, Adjustment]]:
        """(evaluation index, growth gap, decision) per evaluation."""
        return [(e.index, e.alpha, e.decision) for e in self.evaluations]


def evaluate_snapshots(
    state: DdaState, static_snap: FeatureSnapshot, adaptive_snap: FeatureSnapshot
) -> Evaluation:
    """Consume one snapshot pair and adjust the tier if warranted.

    The first call only establishes baselines: growth is defined
    between consecutive snapshots, so with nothing to compare against
    the controller records a neutral keep.
    """
    if state.prev_static is None or state.prev_adaptive is None:
        evaluation = Evaluation(
            index=len(state.evaluations),
            static_growth=0,
            adaptive_growth=0,
            alpha=0,
            decision=Adjustment.KEEP,
            mode_before=state.current_mode,
            mode_after=state.current_mode,
        )
    else:
        static_growth = delta_performance(static_snap, state.prev_static)
        adaptive_growth = delta_performance(adaptive_snap, state.prev_adaptive)
        gap = alpha(static_growth, adaptive_growth)
        decision, new_mode = decide_adjustment(gap, state.beta, state.current_mode)
        evaluation = Evaluation(
            index=len(state.evaluations),
            static_growth=static_growth,
            adaptive_growth=adaptive_growth,
            alpha=gap,
            decision=decision,
            mode_before=state.current_mode,
            mode_after=new_mode,
        )
        state.current_mode = new_mode
    state.prev_static = static_snap
    state.prev_adaptive = adaptive_snap
    state.evaluations.append(evaluation)
    return evaluation


def snapshot_features(world, team: Team, index: int = 0) -> FeatureSnapshot:
    """Extract one side's scoring features from a live world."""
    hero = world.heroes[team]
    return FeatureSnapshot(
        index=index,
        player=team.value,
        hero_level=hero.level,
        hero_deaths=hero.deaths,
        towers_destroyed=world.towers_destroyed[team],
    )


def evaluate_tick(state: DdaState, world) -> tuple[DdaState, DifficultyMode]:
    """Snapshot both sides of a live world and evaluate. Returns the
    state and the tier the adaptive side should play until next time."""
    index = len(state.evaluations)
    evaluate_snapshots(
        state,
        snapshot_features(world, state.static_team, index),
        snapshot_features(world, state.adaptive_team, index),
    )
    return state, state.current_mode
