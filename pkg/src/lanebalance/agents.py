"""Scripted hero policies at three strength tiers.

All tiers share one rule ladder, checked top to bottom every tick:
stay alive, defend structures under attack, fight what is in reach,
handle base chores, push the weakest enemy tower. Tiers differ only in
which rungs they use. The easy tier never shops, never heals, never
touches a spell. The regular tier adds shopping and drinks a potion
before retreating. The hard tier additionally spends skill points,
casts spells, and picks fights with the enemy hero inside its engage
radius, though it will not follow a target into the cover of an enemy
structure.

Policies are pure functions of the per-tick observation, so the same
view always yields the same action regardless of match history.
"""

from __future__ import annotations

from .dda import DifficultyMode
from .entities import (
    Action,
    AttackUnit,
    BuyItem,
    CastSpell,
    Idle,
    ITEM_COST,
    LearnSpell,
    MoveTo,
    Retreat,
    SPELL_MAX_LEVEL,
    UseItem,
)
from .geometry import dist_sq
from .settings import BehaviorConfig, LANES
from .world import Observation, StructView

# Close enough to a defended structure that its attackers are in reach.
DEFEND_STATION_RADIUS = 50.0
# Unshielded heroes hold this far outside a tower's reach.
SIEGE_EDGE_MARGIN = 100.0
# Pushing heroes keep within this distance of their leading creep. Kept
# tight so that when two waves collide, the escorts stand inside attack
# range of the enemy wave (and of each other) instead of spectating.
ESCORT_RADIUS = 150.0

# Skill points go into damage first, then control, then sustain.
_SKILL_ORDER = ("nuke", "freeze", "drain")
# Shop priority: keep potions stocked, then cycle the big items.
_CORE_ITEMS = ("charm", "boots", "gem")
_POTION_STOCK = 2

_LOW_MANA_FRACTION = 0.25

# A hero that popped a potion below the retreat threshold keeps backing
# off until its hp reaches this multiple of the threshold (or the heal
# ends), so the drink is not wasted tanking while barely above the line
# — but only just above it, or healing would empty the lane every time.
POTION_BACKOFF_FACTOR = 1.3


def should_retreat(obs: Observation, mode: DifficultyMode, cfg: BehaviorConfig) -> bool:
    """True when low health cannot be answered with a potion: the easy
    tier never carries one, the others retreat once the stock is spent
    or a potion is already working."""
    you = obs.you
    if not you.alive or you.hp >= cfg.retreat_hp_fraction * you.max_hp:
        return False
    if mode is DifficultyMode.EASY:
        return True
    return not _potion_usable(obs, cfg)


def _potion_usable(obs: Observation, cfg: BehaviorConfig) -> bool:
    return obs.you.items["potion"] > cfg.potion_reserve and not obs.you.healing_active


def choose_purchase(obs: Observation, mode: DifficultyMode) -> str | None:
    """Next item to buy, or None to keep saving. The easy tier never
    shops. Potions are restocked to two first; after that the big
    items cycle evenly. The head of the list is never skipped: if it
    is unaffordable the hero saves instead of buying around it."""
    if mode is DifficultyMode.EASY:
        return None
    items, gold = obs.you.items, obs.you.gold
    if items["potion"] < _POTION_STOCK:
        return "potion" if gold >= ITEM_COST["potion"] else None
    name = min(_CORE_ITEMS, key=lambda n: (items[n], _CORE_ITEMS.index(n)))
    return name if gold >= ITEM_COST[name] else None


def allocate_skill_point(hero) -> str | None:
    """Which spell to learn next, cycling the fixed order and skipping
    maxed spells. None banks the point when everything is maxed or the
    hero has nothing to spend."""
    if hero.skill_points < 1:
        return None
    levels = hero.spell_levels
    open_spells = [s for s in _SKILL_ORDER if levels[s] < SPELL_MAX_LEVEL]
    if not open_spells:
        return None
    return min(open_spells, key=lambda s: (levels[s], _SKILL_ORDER.index(s)))


def select_target_tower(obs: Observation) -> StructView | None:
    """The push target: the alive enemy tower with the least hp left,
    ties broken by lane order then outermost first. With no tower
    standing the enemy ancient is the target; None only once that has
    fallen too (the match is over at that point)."""
    towers = [s for s in obs.enemy_structures if s.kind == "tower" and s.alive]
    if towers:
        return min(towers, key=lambda s: (s.hp, LANES.index(s.lane), s.lane_index))
    for s in obs.enemy_structures:
        if s.kind == "ancient" and s.alive:
            return s
    return None


def _covered_by_structure(pos, structures: tuple[StructView, ...]) -> bool:
    return any(
        s.alive and dist_sq(pos, s.pos) <= s.guard_radius**2 for s in structures
    )


def decide(obs: Observation, mode: DifficultyMode, cfg: BehaviorConfig) -> Action:
    """One tick of policy for the given tier."""
    you = obs.you
    if not you.alive:
        return Idle()

    low_hp = you.hp < cfg.retreat_hp_fraction * you.max_hp
    if low_hp:
        if mode is not DifficultyMode.EASY and _potion_usable(obs, cfg):
            return UseItem("potion")
        if not you.at_base:
            return Retreat()
    elif (
        you.healing_active
        and you.hp < POTION_BACKOFF_FACTOR * cfg.retreat_hp_fraction * you.max_hp
        and not you.at_base
    ):
        # finish drinking out of harm's way instead of turning around
        # the moment the heal crosses the retreat threshold
        return Retreat()

    defending: StructView | None = None
    if cfg.defend_response:
        under_attack = [s for s in obs.my_structures if s.alive and s.under_attack]
        if under_attack:
            defending = min(
                under_attack, key=lambda s: (dist_sq(you.pos, s.pos), s.uid)
            )
            if dist_sq(you.pos, defending.pos) > DEFEND_STATION_RADIUS**2:
                return MoveTo(defending.pos)

    if mode is DifficultyMode.HARD:
        if you.skill_points > 0:
            spell = allocate_skill_point(you)
            if spell is not None:
                return LearnSpell(spell)
        if you.mana < _LOW_MANA_FRACTION * you.max_mana and you.spell_ready["drain"]:
            return CastSpell("drain", you.uid)
        enemy = obs.enemy_hero
        if (
            enemy is not None
            and enemy.alive
            and not _covered_by_structure(enemy.pos, obs.enemy_structures)
        ):
            gap_sq = dist_sq(you.pos, enemy.pos)
            if gap_sq <= cfg.engage_radius**2:
                in_cast_range = gap_sq <= you.spell_range**2
                if in_cast_range and you.spell_ready["freeze"]:
                    return CastSpell("freeze", enemy.uid)
                if in_cast_range and you.spell_ready["nuke"]:
                    return CastSpell("nuke", enemy.uid)
                return AttackUnit(enemy.uid)

    if obs.enemies_in_range:
        creeps = [v for v in obs.enemies_in_range if v.kind == "creep"]
        # a bounty about to drop beats everything: secure the last hit
        finishable = [v for v in creeps if v.hp <= you.attack_damage]
        if finishable:
            return AttackUnit(min(finishable, key=lambda v: (v.hp, v.uid)).uid)
        heroes = [v for v in obs.enemies_in_range if v.kind == "hero"]
        if heroes:
            return AttackUnit(heroes[0].uid)
        if creeps:
            weakest = min(creeps, key=lambda v: (v.hp, v.uid))
            return AttackUnit(weakest.uid)
        return AttackUnit(min(v.uid for v in obs.enemies_in_range))

    if defending is not None:
        return Idle()  # stationed, attackers will close in

    if you.at_base:
        item = choose_purchase(obs, mode)
        if item is not None:
            return BuyItem(item)
        if you.hp < cfg.recover_hp_fraction * you.max_hp:
            return Idle()  # wait out the fountain

    target = select_target_tower(obs)
    if target is not None:
        return _push(obs, target)
    return Idle()


def _push(obs: Observation, target: StructView) -> Action:
    """Advance on the target escorted by own creeps. Attack the tower
    while it has creeps to shoot, or while its defender is dead or gone
    (a free window is worth tanking tower fire); otherwise stay with
    the wave (or, with no wave up, hold just outside the tower's reach)."""
    you = obs.you
    if target.kind != "tower":
        return AttackUnit(target.uid)
    if obs.enemy_hero is None or _tower_is_soaked(obs, target):
        return AttackUnit(target.uid)
    wave = [c for c in obs.my_creeps if c.lane == target.lane]
    if wave:
        spearhead = min(wave, key=lambda c: (dist_sq(c.pos, target.pos), c.uid))
        if dist_sq(you.pos, spearhead.pos) > ESCORT_RADIUS**2:
            return MoveTo(spearhead.pos)
        return Idle()  # travel with the wave; fights start on their own
    edge_sq = (target.guard_radius + SIEGE_EDGE_MARGIN) ** 2
    if dist_sq(you.pos, target.pos) <= edge_sq:
        return MoveTo(obs.base_pos)  # back out of the tower's reach
    return Idle()


def _tower_is_soaked(obs: Observation, tower: StructView) -> bool:
    reach_sq = tower.guard_radius**2
    return any(dist_sq(c.pos, tower.pos) <= reach_sq for c in obs.my_creeps)
