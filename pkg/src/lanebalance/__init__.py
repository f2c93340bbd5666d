"""Headless 1v1 lane-pushing micro-simulator with tiered scripted bots
and a score-trend difficulty controller."""

from .dda import (
    Adjustment,
    DdaState,
    DifficultyMode,
    FeatureSnapshot,
    alpha,
    decide_adjustment,
    delta_performance,
    evaluate_snapshots,
    evaluate_tick,
    performance,
    performance_value,
)
from .harness import ExperimentSpec, ExperimentReport, MatchResult, run_experiment, run_match
from .settings import Settings, load_settings
from .world import new_world, observe, step

__version__ = "0.1.0"

__all__ = [
    "Adjustment",
    "DdaState",
    "DifficultyMode",
    "ExperimentSpec",
    "FeatureSnapshot",
    "MatchResult",
    "Settings",
    "ExperimentReport",
    "alpha",
    "decide_adjustment",
    "delta_performance",
    "evaluate_snapshots",
    "evaluate_tick",
    "load_settings",
    "new_world",
    "observe",
    "performance",
    "performance_value",
    "run_experiment",
    "run_match",
    "step",
    "__version__",
]
