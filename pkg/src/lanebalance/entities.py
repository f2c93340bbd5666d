"""Unit, action, and event types for the lane-pushing world.

Units are plain mutable dataclasses keyed by integer ids unique across
the whole world. Actions are what agents submit; events are what the
world emits per tick. Both are small value objects so they serialize
cleanly into gamelogs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .geometry import Point


class Team(Enum):
    A = "A"
    B = "B"

    @property
    def opponent(self) -> "Team":
        return Team.B if self is Team.A else Team.A

    @property
    def index(self) -> int:
        return 0 if self is Team.A else 1


SPELL_NAMES = ("nuke", "freeze", "drain")
SPELL_MAX_LEVEL = 4

# name -> (mana cost, cooldown seconds, per-level magnitude)
# nuke: direct damage; freeze: immobilize seconds plus light damage;
# drain: hp and mana restored to the caster over drain_duration.
SPELL_COST = {"nuke": 100.0, "freeze": 100.0, "drain": 20.0}
SPELL_COOLDOWN = {"nuke": 4.0, "freeze": 9.0, "drain": 12.0}
SPELL_MAGNITUDE = {
    "nuke": (150.0, 225.0, 300.0, 375.0),
    "freeze": (1.5, 2.0, 2.5, 3.0),
    "drain": (50.0, 75.0, 100.0, 125.0),
}
FREEZE_DAMAGE = (130.0, 160.0, 190.0, 220.0)
DRAIN_DURATION = 3.0

ITEM_NAMES = ("potion", "charm", "boots", "gem")
ITEM_COST = {"potion": 100, "charm": 400, "boots": 450, "gem": 400}
POTION_HEAL_PER_S = 25.0
POTION_DURATION = 8.0
CHARM_BONUS_HP = 150.0
BOOTS_SPEED_FACTOR = 1.2
GEM_BONUS_MANA = 100.0
GEM_SPELL_FACTOR = 0.10  # additive per gem


@dataclass
class Hero:
    uid: int
    team: Team
    pos: Point
    hp: float
    max_hp: float
    mana: float
    max_mana: float
    attack_damage: float
    level: int = 1
    xp: int = 0
    gold: int = 0
    skill_points: int = 0
    spell_levels: dict[str, int] = field(
        default_factory=lambda: {name: 0 for name in SPELL_NAMES}
    )
    spell_cooldowns: dict[str, float] = field(
        default_factory=lambda: {name: 0.0 for name in SPELL_NAMES}
    )
    items: dict[str, int] = field(
        default_factory=lambda: {name: 0 for name in ITEM_NAMES}
    )
    attack_cooldown: float = 0.0
    frozen_until: float = 0.0
    potion_until: float = 0.0
    drain_until: float = 0.0
    drain_rate: float = 0.0  # hp and mana per second while draining
    respawn_at: float | None = None  # sim time, None while alive
    kills: int = 0
    deaths: int = 0
    gold_fraction: float = 0.0  # sub-integer income carry

    @property
    def alive(self) -> bool:
        return self.respawn_at is None

    @property
    def move_speed_factor(self) -> float:
        return BOOTS_SPEED_FACTOR ** self.items["boots"]

    @property
    def spell_factor(self) -> float:
        return 1.0 + GEM_SPELL_FACTOR * self.items["gem"]


@dataclass
class Creep:
    uid: int
    team: Team
    lane: str
    pos: Point
    hp: float
    max_hp: float
    attack_cooldown: float = 0.0
    progress: float = 0.0  # arc length travelled along the lane

    @property
    def alive(self) -> bool:
        return self.hp > 0


@dataclass
class Tower:
    uid: int
    team: Team
    lane: str
    lane_index: int  # 0 is the outermost tower of the lane
    pos: Point
    hp: float
    max_hp: float
    attack_cooldown: float = 0.0
    # hero aggression only; drives the under-attack flag in observations
    last_damaged_at: float | None = None
    # any damage at all; suppresses structure repair while fresh
    last_hit_at: float | None = None

    @property
    def alive(self) -> bool:
        return self.hp > 0


@dataclass
class Ancient:
    uid: int
    team: Team
    pos: Point
    hp: float
    max_hp: float
    last_damaged_at: float | None = None
    last_hit_at: float | None = None

    @property
    def alive(self) -> bool:
        return self.hp > 0


Unit = Hero | Creep | Tower | Ancient


# --- actions -----------------------------------------------------------

@dataclass(frozen=True)
class Idle:
    pass


@dataclass(frozen=True)
class MoveTo:
    target: Point


@dataclass(frozen=True)
class AttackUnit:
    target_uid: int


@dataclass(frozen=True)
class Retreat:
    pass


@dataclass(frozen=True)
class BuyItem:
    item: str


@dataclass(frozen=True)
class UseItem:
    item: str


@dataclass(frozen=True)
class CastSpell:
    spell: str
    target_uid: int


@dataclass(frozen=True)
class LearnSpell:
    spell: str


Action = Idle | MoveTo | AttackUnit | Retreat | BuyItem | UseItem | CastSpell | LearnSpell


# --- events ------------------------------------------------------------

@dataclass(frozen=True)
class DamageDealt:
    attacker_uid: int
    target_uid: int
    amount: float


@dataclass(frozen=True)
class UnitDied:
    """A creep left the field."""

    uid: int
    killer_uid: int | None


@dataclass(frozen=True)
class HeroKilled:
    uid: int
    killer_uid: int | None


@dataclass(frozen=True)
class TowerDestroyed:
    uid: int
    team: "Team"  # the tower's owner
    killer_uid: int | None


@dataclass(frozen=True)
class HeroRespawned:
    uid: int


@dataclass(frozen=True)
class WaveSpawned:
    team: Team
    lane: str
    count: int


@dataclass(frozen=True)
class ItemBought:
    hero_uid: int
    item: str


@dataclass(frozen=True)
class ItemUsed:
    hero_uid: int
    item: str


@dataclass(frozen=True)
class SpellCast:
    hero_uid: int
    spell: str
    target_uid: int


@dataclass(frozen=True)
class SpellLearned:
    hero_uid: int
    spell: str
    level: int


@dataclass(frozen=True)
class LevelUp:
    hero_uid: int
    level: int


@dataclass(frozen=True)
class InvalidAction:
    hero_uid: int
    reason: str


@dataclass(frozen=True)
class MatchEnded:
    winner: Team | None  # None means draw
    reason: str  # "ancient" or "timeout"


Event = (
    DamageDealt
    | UnitDied
    | HeroKilled
    | TowerDestroyed
    | HeroRespawned
    | WaveSpawned
    | ItemBought
    | ItemUsed
    | SpellCast
    | SpellLearned
    | LevelUp
    | InvalidAction
    | MatchEnded
)


def xp_threshold(level: int) -> int:
    """Cumulative xp needed to reach a level (level 1 needs none)."""
    return 50 * level * (level - 1)
