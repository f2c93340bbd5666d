"""Configuration for the simulator, agents, difficulty controller, and logging.

Every tunable number lives here so a match is fully described by one
Settings value plus a seed. Settings load from a flat key-value file
(`key = value`, one key per field, `#` comments); `dump_settings` writes
the same format back, so a dumped file reloads to an identical Settings.

Lane waypoint geometry is derived from the map extent at world creation
and is not exposed in the file format (override programmatically via
WorldConfig.lane_waypoints if a custom map is needed).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .geometry import Point


class ConfigError(ValueError):
    """Raised for invalid or unparseable configuration."""


LANES = ("top", "mid", "bottom")


@dataclass
class WorldConfig:
    """World rules and unit stats. Defaults target 10-20 sim-minute matches."""

    map_width: float = 6000.0
    map_height: float = 6000.0
    towers_per_lane: int = 2
    creep_wave_period: float = 30.0
    creeps_per_wave: int = 4
    match_time_limit: float = 1200.0
    tick_length: float = 0.5
    # Xp sharing reaches anywhere the hero can land damage (spell cast
    # range included, so a max-range finisher still pays its bounty) but
    # not much further: a hero walking home or waiting to respawn earns
    # nothing, so lane uptime differences show up as level differences.
    xp_share_radius: float = 800.0
    respawn_delay_base: float = 10.0
    respawn_delay_per_level: float = 2.0
    periodic_gold_income: float = 1.0
    max_hero_level: int = 25
    rng_seed: int = 42

    hero_max_hp: float = 550.0
    hero_max_mana: float = 300.0
    hero_attack_damage: float = 50.0
    hero_attack_range: float = 500.0
    hero_attack_cooldown: float = 1.5
    hero_move_speed: float = 300.0
    hero_hp_per_level: float = 35.0
    hero_mana_per_level: float = 30.0
    hero_damage_per_level: float = 8.0
    # Passive regen is a trickle: a hero that falls below its retreat
    # threshold stays low until it heals at the fountain (or drinks a
    # potion), so retreat trips have a real opportunity cost.
    hero_hp_regen: float = 0.1
    # Mana flows fast enough to fuel a spell opener every wave or two;
    # casters are limited by cooldowns and positioning, not by sitting
    # dry between engagements.
    hero_mana_regen: float = 7.0
    hero_kill_gold: int = 200
    # Walking-around money: enough for a pair of potions before the
    # first wave's income arrives, so early sustain is a choice rather
    # than a farm race.
    hero_start_gold: int = 200
    hero_kill_xp: int = 100

    creep_max_hp: float = 300.0
    creep_attack_damage: float = 20.0
    creep_attack_range: float = 120.0
    # Soldiers swing fast for their size: wave-on-wave fights resolve
    # inside one spawn period, and the survivors do real damage to a
    # tower instead of tickling it until the next wave washes them away.
    creep_attack_cooldown: float = 0.5
    creep_move_speed: float = 280.0
    creep_xp_bounty: int = 30
    creep_gold_bounty: int = 40

    tower_max_hp: float = 1300.0
    tower_attack_damage: float = 110.0
    tower_attack_range: float = 700.0
    # Towers swing hard but slowly: single hits stay scary to low-level
    # heroes while a creep wave can soak long enough for a push to count
    # and a short dive is survivable rather than suicidal.
    tower_attack_cooldown: float = 2.5
    tower_gold_bounty: int = 150
    # Taking a tower pays some experience to the hero on the spot —
    # worth a detour but not an instant level once past the laning stage.
    tower_xp_bounty: int = 100
    # Structures repair themselves once left alone for a while: stray
    # creep chip heals back between assaults, so remaining hp reads as
    # siege progress rather than scar tissue from lane noise — but while
    # a push keeps landing hits, no repair happens and its progress
    # carries across the whole assault. The rate loses to sustained wave
    # pressure on purpose: an abandoned lane crumbles in minutes, while a
    # tended one (whose defender clears each siege early) stays healthy.
    tower_hp_regen: float = 2.0
    structure_repair_delay: float = 10.0

    ancient_max_hp: float = 2000.0
    ancient_hp_regen: float = 8.0

    sight_radius: float = 1200.0
    shop_radius: float = 400.0
    fountain_hp_per_s: float = 60.0
    fountain_mana_per_s: float = 40.0
    damage_jitter: float = 0.10
    spell_cast_range: float = 700.0

    # lane -> polyline from team A's base to team B's base; None derives
    # the default three-lane layout from the map extent.
    lane_waypoints: dict[str, list[Point]] | None = field(default=None, repr=False)

    def validate(self) -> None:
        counts = {
            "towers_per_lane": self.towers_per_lane,
            "creeps_per_wave": self.creeps_per_wave,
            "max_hero_level": self.max_hero_level,
        }
        for name, value in counts.items():
            if value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}")
        if self.tick_length <= 0:
            raise ConfigError(f"tick_length must be > 0, got {self.tick_length}")
        if self.match_time_limit <= 0:
            raise ConfigError("match_time_limit must be > 0")
        ticks = self.match_time_limit / self.tick_length
        if abs(ticks - round(ticks)) > 1e-9:
            raise ConfigError(
                "match_time_limit must be a multiple of tick_length "
                f"({self.match_time_limit} / {self.tick_length})"
            )
        if self.map_width <= 0 or self.map_height <= 0:
            raise ConfigError("map extent must be positive")
        if self.lane_waypoints is not None:
            if sorted(self.lane_waypoints) != sorted(LANES):
                raise ConfigError(
                    f"lane_waypoints must define exactly the lanes {LANES}"
                )
            for lane, pts in self.lane_waypoints.items():
                if len(pts) < 2:
                    raise ConfigError(f"lane {lane!r} needs >= 2 waypoints")

    def resolved_lanes(self) -> dict[str, list[Point]]:
        """Lane polylines, base A end first. Defaults hug the map edges."""
        if self.lane_waypoints is not None:
            return self.lane_waypoints
        w, h = self.map_width, self.map_height
        ox, oy = 0.05 * w, 0.05 * h
        a = (ox, oy)
        b = (w - ox, h - oy)
        return {
            "top": [a, (ox, h - oy), b],
            "mid": [a, b],
            "bottom": [a, (w - ox, oy), b],
        }

    def base_position(self, team_index: int) -> Point:
        lanes = self.resolved_lanes()
        return lanes["mid"][0] if team_index == 0 else lanes["mid"][-1]


@dataclass
class BehaviorConfig:
    """Knobs shared by all three scripted tiers."""

    retreat_hp_fraction: float = 0.30
    recover_hp_fraction: float = 0.90  # stay at the fountain until back to this
    engage_radius: float = 700.0
    defend_response: bool = True
    potion_reserve: int = 0

    def validate(self) -> None:
        if not 0.0 < self.retreat_hp_fraction < 1.0:
            raise ConfigError(
                f"retreat_hp_fraction must be in (0, 1), got {self.retreat_hp_fraction}"
            )
        if not 0.0 < self.recover_hp_fraction <= 1.0:
            raise ConfigError("recover_hp_fraction must be in (0, 1]")
        if self.engage_radius <= 0:
            raise ConfigError("engage_radius must be > 0")
        if self.potion_reserve < 0:
            raise ConfigError("potion_reserve must be >= 0")


@dataclass
class DdaConfig:
    """Difficulty controller parameters."""

    beta: int = 1
    evaluation_period: float = 15.0
    initial_mode: str = "regular"

    def validate(self) -> None:
        if self.beta < 1:
            raise ConfigError(f"beta must be a positive integer, got {self.beta}")
        if self.evaluation_period <= 0:
            raise ConfigError("evaluation_period must be > 0")
        if self.initial_mode not in ("easy", "regular", "hard"):
            raise ConfigError(f"unknown initial_mode {self.initial_mode!r}")


@dataclass
class TelemetryConfig:
    """Gamelog cadence and the per-match balance verdict threshold."""

    log_period: float = 15.0
    balance_threshold: float = 0.7

    def validate(self) -> None:
        if self.log_period <= 0:
            raise ConfigError("log_period must be > 0")
        if not 0.0 < self.balance_threshold <= 1.0:
            raise ConfigError("balance_threshold must be in (0, 1]")


@dataclass
class Settings:
    world: WorldConfig = field(default_factory=WorldConfig)
    behavior: BehaviorConfig = field(default_factory=BehaviorConfig)
    dda: DdaConfig = field(default_factory=DdaConfig)
    telemetry: TelemetryConfig = field(default_factory=TelemetryConfig)

    def validate(self) -> None:
        self.world.validate()
        self.behavior.validate()
        self.dda.validate()
        self.telemetry.validate()


# File schema: section name -> (attribute on Settings, excluded fields).
_SECTIONS = {
    "world": ("world", {"lane_waypoints"}),
    "behavior": ("behavior", set()),
    "dda": ("dda", set()),
    "telemetry": ("telemetry", set()),
}


def _field_map() -> dict[str, tuple[str, dataclasses.Field]]:
    """Config key -> (settings attribute, dataclass field)."""
    out: dict[str, tuple[str, dataclasses.Field]] = {}
    for attr, excluded in _SECTIONS.values():
        cls = type(getattr(Settings(), attr))
        for f in dataclasses.fields(cls):
            if f.name in excluded:
                continue
            if f.name in out:
                raise AssertionError(f"duplicate config key {f.name}")
            out[f.name] = (attr, f)
    return out


def config_keys() -> list[str]:
    """All keys understood by the config file, in schema order."""
    return list(_field_map())


def _parse_value(key: str, raw: str, f: dataclasses.Field):
    raw = raw.strip()
    if f.type in ("float", float):
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if f.type in ("int", int):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None
    if f.type in ("bool", bool):
        if raw.lower() in ("true", "1", "yes", "on"):
            return True
        if raw.lower() in ("false", "0", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected true/false, got {raw!r}")
    return raw


def apply_overrides(settings: Settings, overrides: dict[str, str]) -> Settings:
    """Apply raw `key -> text value` overrides onto settings, in place."""
    fields = _field_map()
    for key, raw in overrides.items():
        if key not in fields:
            raise ConfigError(f"unknown config key {key!r}")
        attr, f = fields[key]
        setattr(getattr(settings, attr), f.name, _parse_value(key, raw, f))
    return settings


def load_settings(path: str | Path) -> Settings:
    """Parse a key-value config file into validated Settings."""
    settings = Settings()
    overrides: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        overrides[key.strip()] = raw
    apply_overrides(settings, overrides)
    settings.validate()
    return settings


def dump_settings(settings: Settings) -> str:
    """Render settings in the config file format (stable key order)."""
    lines: list[str] = []
    for section, (attr, excluded) in _SECTIONS.items():
        lines.append(f"# {section}")
        obj = getattr(settings, attr)
        for f in dataclasses.fields(obj):
            if f.name in excluded:
                continue
            value = getattr(obj, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"
