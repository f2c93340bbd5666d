"""Deterministic fixed-timestep simulation of a three-lane 1v1 map.

The world advances in constant ticks. Every tick runs the same phase
order: validate submitted actions, instant effects (shopping, items,
spell casts), creep wave spawns, movement, simultaneous attack
resolution, deaths and rewards, timed effects and regeneration,
respawns, then the clock advance and end-of-match check. All
randomness flows through the world's own seeded generator, so equal
seeds give bit-equal runs; sim time is recomputed as tick * tick_length
rather than accumulated, so it never drifts.

Attack resolution is simultaneous: attacks are collected against the
health present at the start of the phase and then applied in attacker
id order. A unit that dies this tick still lands its own hit, and
neither side gets a first-mover advantage.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .dda import performance_value
from .entities import (
    Action,
    Ancient,
    AttackUnit,
    BuyItem,
    HeroKilled,
    CastSpell,
    Creep,
    DRAIN_DURATION,
    DamageDealt,
    Event,
    FREEZE_DAMAGE,
    Hero,
    HeroRespawned,
    Idle,
    InvalidAction,
    ITEM_COST,
    ItemBought,
    ItemUsed,
    LearnSpell,
    LevelUp,
    MatchEnded,
    MoveTo,
    POTION_DURATION,
    Retreat,
    SPELL_COOLDOWN,
    SPELL_COST,
    SPELL_MAGNITUDE,
    SPELL_MAX_LEVEL,
    SpellCast,
    SpellLearned,
    Team,
    Tower,
    TowerDestroyed,
    Unit,
    UnitDied,
    UseItem,
    WaveSpawned,
    CHARM_BONUS_HP,
    GEM_BONUS_MANA,
    xp_threshold,
)
from .entities import POTION_HEAL_PER_S
from .geometry import (
    Point,
    dist_sq,
    point_along_polyline,
    polyline_length,
    step_toward,
)
from .settings import LANES, Settings

# Creeps ignore enemies farther than this and keep marching. Kept
# short so soldiers brawl whatever stands in the lane but do not chase
# heroes that poke from range — ranged farming is safe by default.
CREEP_AGGRO_RADIUS = 220.0
# Arc-length margin for the cheap 1D "anything possibly near?" test.
# Lane corners fold arc distance by up to sqrt(2), so this must exceed
# (aggro radius + per-tick closing speed) * sqrt(2).
SCAN_WINDOW = 1000.0
# A structure counts as under attack this long after the last hit.
UNDER_ATTACK_WINDOW = 2.0


@dataclass
class WorldState:
    settings: Settings
    rng: random.Random
    tick: int
    sim_time: float
    next_uid: int
    next_wave_time: float
    units: dict[int, Unit]
    heroes: dict[Team, Hero]
    ancients: dict[Team, Ancient]
    towers: list[Tower]
    creeps: dict[int, Creep]
    towers_destroyed: dict[Team, int]
    base_pos: dict[Team, Point]
    lanes: dict[str, list[Point]]
    lanes_rev: dict[str, list[Point]]
    lane_length: dict[str, float]
    lane_towers: dict[str, list[Tower]]
    tower_arcs: dict[int, tuple[float, float]]  # uid -> (arc from A, arc from B)
    over: bool = False
    winner: Team | None = None
    end_reason: str | None = None

    def hero(self, team: Team) -> Hero:
        return self.heroes[team]

    def score(self, team: Team) -> int:
        """Current match score: level minus deaths plus towers taken."""
        h = self.heroes[team]
        return performance_value(h.level, h.deaths, self.towers_destroyed[team])

    def digest(self) -> str:
        """Stable fingerprint of the full state, for determinism checks."""
        parts: list[object] = [
            self.tick,
            self.sim_time,
            self.next_uid,
            self.next_wave_time,
            self.over,
            self.winner.value if self.winner else None,
            self.end_reason,
            tuple(sorted((t.value, n) for t, n in self.towers_destroyed.items())),
            self.rng.getstate(),
        ]
        for uid in sorted(self.units):
            u = self.units[uid]
            fields = vars(u).copy()
            for key in ("spell_levels", "spell_cooldowns", "items"):
                if key in fields:
                    fields[key] = tuple(sorted(fields[key].items()))
            parts.append((uid, type(u).__name__, tuple(sorted(
                (k, v.value if isinstance(v, Team) else v)
                for k, v in fields.items()
            ))))
        return hashlib.sha256(repr(parts).encode()).hexdigest()


def new_world(settings: Settings, seed: int | None = None) -> WorldState:
    settings.validate()
    cfg = settings.world
    lanes = cfg.resolved_lanes()
    lanes_rev = {name: list(reversed(pts)) for name, pts in lanes.items()}
    lane_length = {name: polyline_length(pts) for name, pts in lanes.items()}
    world = WorldState(
        settings=settings,
        rng=random.Random(cfg.rng_seed if seed is None else seed),
        tick=0,
        sim_time=0.0,
        next_uid=1,
        next_wave_time=0.0,
        units={},
        heroes={},
        ancients={},
        towers=[],
        creeps={},
        towers_destroyed={Team.A: 0, Team.B: 0},
        base_pos={
            Team.A: cfg.base_position(0),
            Team.B: cfg.base_position(1),
        },
        lanes=lanes,
        lanes_rev=lanes_rev,
        lane_length=lane_length,
        lane_towers={name: [] for name in LANES},
        tower_arcs={},
    )

    for team in (Team.A, Team.B):
        hero = Hero(
            uid=world.next_uid,
            team=team,
            pos=world.base_pos[team],
            hp=cfg.hero_max_hp,
            max_hp=cfg.hero_max_hp,
            mana=cfg.hero_max_mana,
            max_mana=cfg.hero_max_mana,
            attack_damage=cfg.hero_attack_damage,
            gold=cfg.hero_start_gold,
            skill_points=1,  # level 1 grants the first point
        )
        world.next_uid += 1
        world.units[hero.uid] = hero
        world.heroes[team] = hero

    for team in (Team.A, Team.B):
        ancient = Ancient(
            uid=world.next_uid,
            team=team,
            pos=world.base_pos[team],
            hp=cfg.ancient_max_hp,
            max_hp=cfg.ancient_max_hp,
        )
        world.next_uid += 1
        world.units[ancient.uid] = ancient
        world.ancients[team] = ancient

    n = cfg.towers_per_lane
    for team in (Team.A, Team.B):
        for lane in LANES:
            length = lane_length[lane]
            pts = lanes[lane] if team is Team.A else lanes_rev[lane]
            for i in range(n):
                # index 0 is the outermost tower, furthest from its base;
                # the outermost sits at 30% of the lane, leaving a wide
                # no-man's land around the middle where waves clash
                arc_own = 0.30 * (n - i) / n * length
                tower = Tower(
                    uid=world.next_uid,
                    team=team,
                    lane=lane,
                    lane_index=i,
                    pos=point_along_polyline(pts, arc_own),
                    hp=cfg.tower_max_hp,
                    max_hp=cfg.tower_max_hp,
                )
                world.next_uid += 1
                world.units[tower.uid] = tower
                world.towers.append(tower)
                world.lane_towers[lane].append(tower)
                arc_a = arc_own if team is Team.A else length - arc_own
                world.tower_arcs[tower.uid] = (arc_a, length - arc_a)
    return world


# --- tick pipeline -----------------------------------------------------

def step(world: WorldState, actions: dict[Team, Action] | None = None) -> list[Event]:
    """Advance one tick. Returns the events the tick produced."""
    if world.over:
        raise RuntimeError("match already ended")
    acts: dict[Team, Action] = {Team.A: Idle(), Team.B: Idle()}
    if actions:
        acts.update(actions)
    events: list[Event] = []
    killers: dict[int, int | None] = {}

    resolved = _validate(world, acts, events)
    _instant_effects(world, resolved, events, killers)
    _spawn_waves(world, events)
    creep_targets = _move(world, resolved)
    _attack(world, resolved, creep_targets, events, killers)
    _deaths(world, events, killers)
    _regen_and_timers(world)
    _respawns(world, events)
    world.tick += 1
    world.sim_time = world.tick * world.settings.world.tick_length
    _check_end(world, events)
    return events


def _validate(
    world: WorldState, acts: dict[Team, Action], events: list[Event]
) -> dict[Team, Action]:
    cfg = world.settings.world
    out: dict[Team, Action] = {}
    for team in (Team.A, Team.B):
        hero = world.heroes[team]
        action = acts[team]
        reason = None
        if not hero.alive:
            if not isinstance(action, Idle):
                reason = "hero is dead"
        elif isinstance(action, AttackUnit):
            target = world.units.get(action.target_uid)
            if target is None or not target.alive:
                reason = "no such target"
            elif target.team is team:
                reason = "target is friendly"
        elif isinstance(action, BuyItem):
            if action.item not in ITEM_COST:
                reason = f"unknown item {action.item!r}"
            elif dist_sq(hero.pos, world.base_pos[team]) > cfg.shop_radius**2:
                reason = "not at the shop"
            elif hero.gold < ITEM_COST[action.item]:
                reason = "not enough gold"
        elif isinstance(action, UseItem):
            if action.item not in ITEM_COST:
                reason = f"unknown item {action.item!r}"
            elif action.item != "potion":
                reason = "item is passive"
            elif hero.items[action.item] < 1:
                reason = "item not in inventory"
        elif isinstance(action, CastSpell):
            reason = _validate_cast(world, hero, action)
        elif isinstance(action, LearnSpell):
            if action.spell not in SPELL_COST:
                reason = f"unknown spell {action.spell!r}"
            elif hero.skill_points < 1:
                reason = "no skill points"
            elif hero.spell_levels[action.spell] >= SPELL_MAX_LEVEL:
                reason = "spell already maxed"
        if reason is not None:
            events.append(InvalidAction(hero_uid=hero.uid, reason=reason))
            out[team] = Idle()
        else:
            out[team] = action
    return out


def _validate_cast(world: WorldState, hero: Hero, action: CastSpell) -> str | None:
    if action.spell not in SPELL_COST:
        return f"unknown spell {action.spell!r}"
    if hero.spell_levels[action.spell] < 1:
        return "spell not learned"
    if hero.spell_cooldowns[action.spell] > 1e-9:
        return "spell on cooldown"
    if hero.mana < SPELL_COST[action.spell]:
        return "not enough mana"
    if action.spell == "drain":
        if action.target_uid != hero.uid:
            return "drain targets self"
        return None
    target = world.units.get(action.target_uid)
    enemy_hero = world.heroes[hero.team.opponent]
    if target is None or target is not enemy_hero or not target.alive:
        return "target must be the enemy hero"
    cast_range = world.settings.world.spell_cast_range
    if dist_sq(hero.pos, target.pos) > cast_range**2:
        return "target out of range"
    return None


def _instant_effects(
    world: WorldState,
    acts: dict[Team, Action],
    events: list[Event],
    killers: dict[int, int | None],
) -> None:
    cfg = world.settings.world
    t = world.sim_time
    for team in (Team.A, Team.B):
        hero = world.heroes[team]
        action = acts[team]
        if isinstance(action, BuyItem):
            hero.gold -= ITEM_COST[action.item]
            hero.items[action.item] += 1
            if action.item == "charm":
                hero.max_hp += CHARM_BONUS_HP
                hero.hp += CHARM_BONUS_HP
            elif action.item == "gem":
                hero.max_mana += GEM_BONUS_MANA
                hero.mana += GEM_BONUS_MANA
            events.append(ItemBought(hero_uid=hero.uid, item=action.item))
        elif isinstance(action, UseItem):
            hero.items[action.item] -= 1
            hero.potion_until = t + POTION_DURATION
            events.append(ItemUsed(hero_uid=hero.uid, item=action.item))
        elif isinstance(action, CastSpell):
            _cast(world, hero, action, events, killers)
        elif isinstance(action, LearnSpell):
            hero.skill_points -= 1
            hero.spell_levels[action.spell] += 1
            events.append(
                SpellLearned(
                    hero_uid=hero.uid,
                    spell=action.spell,
                    level=hero.spell_levels[action.spell],
                )
            )


def _cast(
    world: WorldState,
    hero: Hero,
    action: CastSpell,
    events: list[Event],
    killers: dict[int, int | None],
) -> None:
    spell = action.spell
    level = hero.spell_levels[spell]
    hero.mana -= SPELL_COST[spell]
    hero.spell_cooldowns[spell] = SPELL_COOLDOWN[spell]
    magnitude = SPELL_MAGNITUDE[spell][level - 1] * hero.spell_factor
    t = world.sim_time
    events.append(SpellCast(hero_uid=hero.uid, spell=spell, target_uid=action.target_uid))
    if spell == "drain":
        hero.drain_until = t + DRAIN_DURATION
        hero.drain_rate = magnitude / DRAIN_DURATION
        return
    target = world.heroes[hero.team.opponent]
    if spell == "nuke":
        _apply_damage(world, hero.uid, target, magnitude, events, killers)
    elif spell == "freeze":
        target.frozen_until = max(target.frozen_until, t + magnitude)
        damage = FREEZE_DAMAGE[level - 1] * hero.spell_factor
        _apply_damage(world, hero.uid, target, damage, events, killers)


def _spawn_waves(world: WorldState, events: list[Event]) -> None:
    cfg = world.settings.world
    while world.next_wave_time <= world.sim_time + 1e-9:
        for team in (Team.A, Team.B):
            for lane in LANES:
                start = world.lanes[lane][0] if team is Team.A else world.lanes_rev[lane][0]
                for _ in range(cfg.creeps_per_wave):
                    creep = Creep(
                        uid=world.next_uid,
                        team=team,
                        lane=lane,
                        pos=start,
                        hp=cfg.creep_max_hp,
                        max_hp=cfg.creep_max_hp,
                    )
                    world.next_uid += 1
                    world.units[creep.uid] = creep
                    world.creeps[creep.uid] = creep
                events.append(WaveSpawned(team=team, lane=lane, count=cfg.creeps_per_wave))
        world.next_wave_time += cfg.creep_wave_period


def _move(world: WorldState, acts: dict[Team, Action]) -> dict[int, int]:
    """Move heroes then creeps. Returns creep uid -> chosen attack target."""
    cfg = world.settings.world
    dt = cfg.tick_length
    t = world.sim_time
    # movement targets use positions from the start of the phase so
    # neither team benefits from moving first
    start_pos: dict[int, Point] = {uid: u.pos for uid, u in world.units.items()}

    for team in (Team.A, Team.B):
        hero = world.heroes[team]
        if not hero.alive or t < hero.frozen_until:
            continue
        action = acts[team]
        speed = cfg.hero_move_speed * hero.move_speed_factor * dt
        if isinstance(action, MoveTo):
            x, y = step_toward(hero.pos, action.target, speed)
            hero.pos = (min(max(x, 0.0), cfg.map_width), min(max(y, 0.0), cfg.map_height))
        elif isinstance(action, AttackUnit):
            target = world.units.get(action.target_uid)
            if target is not None and target.alive:
                goal = start_pos.get(action.target_uid, target.pos)
                if dist_sq(hero.pos, goal) > cfg.hero_attack_range**2:
                    hero.pos = step_toward(hero.pos, goal, speed)
        elif isinstance(action, Retreat):
            hero.pos = step_toward(hero.pos, world.base_pos[team], speed)

    return _move_creeps(world, start_pos)


def _move_creeps(world: WorldState, start_pos: dict[int, Point]) -> dict[int, int]:
    cfg = world.settings.world
    step_len = cfg.creep_move_speed * cfg.tick_length
    aggro_sq = CREEP_AGGRO_RADIUS**2
    range_sq = cfg.creep_attack_range**2
    targets: dict[int, int] = {}

    by_lane: dict[str, dict[Team, list[Creep]]] = {
        lane: {Team.A: [], Team.B: []} for lane in LANES
    }
    for creep in world.creeps.values():
        by_lane[creep.lane][creep.team].append(creep)
    frontier = {
        lane: {
            team: max((c.progress for c in group), default=-1e18)
            for team, group in sides.items()
        }
        for lane, sides in by_lane.items()
    }
    heroes = [h for h in world.heroes.values() if h.alive]

    for lane in LANES:
        length = world.lane_length[lane]
        lane_towers = world.lane_towers[lane]
        for creep in by_lane[lane][Team.A] + by_lane[lane][Team.B]:
            enemy = creep.team.opponent
            p = creep.progress
            near = p >= length - SCAN_WINDOW  # enemy ancient at lane end
            if not near and p + frontier[lane][enemy] >= length - SCAN_WINDOW:
                near = True
            if not near:
                for tower in lane_towers:
                    if tower.team is enemy and tower.alive:
                        arc = world.tower_arcs[tower.uid][creep.team.index]
                        if p >= arc - SCAN_WINDOW:
                            near = True
                            break
            cpos = creep.pos
            if not near:
                for hero in heroes:
                    if hero.team is enemy and dist_sq(cpos, start_pos[hero.uid]) <= aggro_sq:
                        near = True
                        break
            if near:
                best: tuple[float, int, Unit] | None = None
                for other in by_lane[lane][enemy]:
                    # scan start-of-phase positions: the team whose creeps
                    # move later in the loop must not see fresher data
                    d2 = dist_sq(cpos, start_pos[other.uid])
                    if best is None or (d2, other.uid) < best[:2]:
                        best = (d2, other.uid, other)
                for tower in lane_towers:
                    if tower.team is enemy and tower.alive:
                        d2 = dist_sq(cpos, tower.pos)
                        if best is None or (d2, tower.uid) < best[:2]:
                            best = (d2, tower.uid, tower)
                for hero in heroes:
                    if hero.team is enemy:
                        d2 = dist_sq(cpos, start_pos[hero.uid])
                        if best is None or (d2, hero.uid) < best[:2]:
                            best = (d2, hero.uid, hero)
                ancient = world.ancients[enemy]
                if ancient.alive:
                    d2 = dist_sq(cpos, ancient.pos)
                    if best is None or (d2, ancient.uid) < best[:2]:
                        best = (d2, ancient.uid, ancient)
                if best is not None and best[0] <= range_sq:
                    targets[creep.uid] = best[1]
                    continue
                if best is not None and best[0] <= aggro_sq:
                    goal = start_pos.get(best[1], best[2].pos)
                    creep.pos = step_toward(cpos, goal, step_len)
                    continue
            creep.progress = min(length, p + step_len)
            pts = world.lanes[lane] if creep.team is Team.A else world.lanes_rev[lane]
            creep.pos = point_along_polyline(pts, creep.progress)
    return targets


def _attack(
    world: WorldState,
    acts: dict[Team, Action],
    creep_targets: dict[int, int],
    events: list[Event],
    killers: dict[int, int | None],
) -> None:
    cfg = world.settings.world
    pending: list[tuple[int, Unit, float]] = []

    for team in (Team.A, Team.B):
        hero = world.heroes[team]
        action = acts[team]
        if not hero.alive or hero.attack_cooldown > 1e-9:
            continue
        if isinstance(action, AttackUnit):
            target = world.units.get(action.target_uid)
            if (
                target is not None
                and target.alive
                and dist_sq(hero.pos, target.pos) <= cfg.hero_attack_range**2
            ):
                pending.append((hero.uid, target, hero.attack_damage))
                hero.attack_cooldown = cfg.hero_attack_cooldown

    for uid, creep in world.creeps.items():
        if creep.attack_cooldown > 1e-9:
            continue
        target_uid = creep_targets.get(uid)
        if target_uid is None:
            continue
        target = world.units.get(target_uid)
        if (
            target is not None
            and target.alive
            and dist_sq(creep.pos, target.pos) <= cfg.creep_attack_range**2
        ):
            pending.append((uid, target, cfg.creep_attack_damage))
            creep.attack_cooldown = cfg.creep_attack_cooldown

    range_sq = cfg.tower_attack_range**2
    by_lane: dict[str, list[Creep]] = {lane: [] for lane in LANES}
    for creep in world.creeps.values():
        by_lane[creep.lane].append(creep)
    for tower in world.towers:
        if not tower.alive or tower.attack_cooldown > 1e-9:
            continue
        # creeps soak tower fire before heroes do
        best: tuple[float, int, Unit] | None = None
        for creep in by_lane[tower.lane]:
            if creep.team is not tower.team:
                d2 = dist_sq(tower.pos, creep.pos)
                if d2 <= range_sq and (best is None or (d2, creep.uid) < best[:2]):
                    best = (d2, creep.uid, creep)
        if best is None:
            enemy_hero = world.heroes[tower.team.opponent]
            if enemy_hero.alive:
                d2 = dist_sq(tower.pos, enemy_hero.pos)
                if d2 <= range_sq:
                    best = (d2, enemy_hero.uid, enemy_hero)
        if best is not None:
            pending.append((tower.uid, best[2], cfg.tower_attack_damage))
            tower.attack_cooldown = cfg.tower_attack_cooldown

    jitter = cfg.damage_jitter
    for attacker_uid, target, base in sorted(pending, key=lambda item: item[0]):
        damage = max(1.0, base * (1.0 + world.rng.uniform(-jitter, jitter)))
        _apply_damage(world, attacker_uid, target, damage, events, killers)


def _apply_damage(
    world: WorldState,
    attacker_uid: int,
    target: Unit,
    amount: float,
    events: list[Event],
    killers: dict[int, int | None],
) -> None:
    was_alive = target.hp > 0
    target.hp = max(0.0, target.hp - amount)
    if isinstance(target, Ancient):
        # any hit on the throne is existential, whoever lands it
        target.last_damaged_at = world.sim_time
        target.last_hit_at = world.sim_time
    elif isinstance(target, Tower):
        target.last_hit_at = world.sim_time
        target.last_damaged_at = world.sim_time
    events.append(DamageDealt(attacker_uid=attacker_uid, target_uid=target.uid, amount=amount))
    if was_alive and target.hp <= 0:
        killers[target.uid] = attacker_uid


def _deaths(world: WorldState, events: list[Event], killers: dict[int, int | None]) -> None:
    cfg = world.settings.world
    share_sq = cfg.xp_share_radius**2
    for uid in sorted(killers):
        victim = world.units.get(uid)
        if victim is None:
            continue
        killer_uid = killers[uid]
        killer = world.units.get(killer_uid) if killer_uid is not None else None
        if isinstance(victim, Creep):
            events.append(UnitDied(uid=uid, killer_uid=killer_uid))
            _share_xp(world, victim.team, victim.pos, cfg.creep_xp_bounty, share_sq, events)
            if isinstance(killer, Hero) and killer.team is not victim.team:
                killer.gold += cfg.creep_gold_bounty
            del world.creeps[uid]
            del world.units[uid]
        elif isinstance(victim, Hero):
            events.append(HeroKilled(uid=uid, killer_uid=killer_uid))
            victim.deaths += 1
            victim.respawn_at = world.sim_time + (
                cfg.respawn_delay_base + cfg.respawn_delay_per_level * victim.level
            )
            victim.potion_until = 0.0
            victim.drain_until = 0.0
            victim.frozen_until = 0.0
            _share_xp(world, victim.team, victim.pos, cfg.hero_kill_xp, share_sq, events)
            if isinstance(killer, Hero) and killer.team is not victim.team:
                killer.kills += 1
                killer.gold += cfg.hero_kill_gold
        elif isinstance(victim, Tower):
            events.append(
                TowerDestroyed(uid=uid, team=victim.team, killer_uid=killer_uid)
            )
            world.towers_destroyed[victim.team.opponent] += 1
            _share_xp(world, victim.team, victim.pos, cfg.tower_xp_bounty, share_sq, events)
            if isinstance(killer, Hero) and killer.team is not victim.team:
                killer.gold += cfg.tower_gold_bounty
        # a fallen ancient is picked up by the end-of-tick check


def _share_xp(
    world: WorldState,
    victim_team: Team,
    where: Point,
    bounty: int,
    share_sq: float,
    events: list[Event],
) -> None:
    recipients = [
        h
        for h in world.heroes.values()
        if h.team is not victim_team and h.alive and dist_sq(h.pos, where) <= share_sq
    ]
    if not recipients:
        return
    share = bounty // len(recipients)
    for hero in recipients:
        award_experience(world, hero, share, events)


def award_experience(
    world: WorldState, hero: Hero, amount: int, events: list[Event] | None = None
) -> None:
    """Grant xp, applying any level-ups and their stat growth."""
    cfg = world.settings.world
    hero.xp += amount
    while hero.level < cfg.max_hero_level and hero.xp >= xp_threshold(hero.level + 1):
        hero.level += 1
        hero.skill_points += 1
        # pools grow but current hp/mana do not: leveling mid-retreat
        # must not bounce a wounded hero back over its retreat threshold
        hero.max_hp += cfg.hero_hp_per_level
        hero.max_mana += cfg.hero_mana_per_level
        hero.attack_damage += cfg.hero_damage_per_level
        if events is not None:
            events.append(LevelUp(hero_uid=hero.uid, level=hero.level))


def _regen_and_timers(world: WorldState) -> None:
    cfg = world.settings.world
    dt = cfg.tick_length
    t = world.sim_time
    shop_sq = cfg.shop_radius**2
    for hero in world.heroes.values():
        hero.attack_cooldown = max(0.0, hero.attack_cooldown - dt)
        for spell in hero.spell_cooldowns:
            hero.spell_cooldowns[spell] = max(0.0, hero.spell_cooldowns[spell] - dt)
        hero.gold_fraction += cfg.periodic_gold_income * dt
        whole = int(hero.gold_fraction)
        if whole:
            hero.gold += whole
            hero.gold_fraction -= whole
        if not hero.alive or hero.hp <= 0:
            continue
        hp_rate = cfg.hero_hp_regen
        mana_rate = cfg.hero_mana_regen
        if hero.potion_until > t:
            hp_rate += POTION_HEAL_PER_S
        if hero.drain_until > t:
            hp_rate += hero.drain_rate
            mana_rate += hero.drain_rate
        if dist_sq(hero.pos, world.base_pos[hero.team]) <= shop_sq:
            hp_rate += cfg.fountain_hp_per_s
            mana_rate += cfg.fountain_mana_per_s
        hero.hp = min(hero.max_hp, hero.hp + hp_rate * dt)
        hero.mana = min(hero.max_mana, hero.mana + mana_rate * dt)
    for creep in world.creeps.values():
        creep.attack_cooldown = max(0.0, creep.attack_cooldown - dt)
    repair_ok = (
        lambda s: s.last_hit_at is None
        or t - s.last_hit_at >= cfg.structure_repair_delay
    )
    for tower in world.towers:
        tower.attack_cooldown = max(0.0, tower.attack_cooldown - dt)
        if tower.alive and repair_ok(tower):
            tower.hp = min(tower.max_hp, tower.hp + cfg.tower_hp_regen * dt)
    for ancient in world.ancients.values():
        if ancient.alive and repair_ok(ancient):
            ancient.hp = min(
                ancient.max_hp, ancient.hp + cfg.ancient_hp_regen * dt
            )


def _respawns(world: WorldState, events: list[Event]) -> None:
    end_time = (world.tick + 1) * world.settings.world.tick_length
    for hero in world.heroes.values():
        if hero.respawn_at is not None and hero.respawn_at <= end_time + 1e-9:
            hero.respawn_at = None
            hero.pos = world.base_pos[hero.team]
            hero.hp = hero.max_hp
            hero.mana = hero.max_mana
            events.append(HeroRespawned(uid=hero.uid))


def _check_end(world: WorldState, events: list[Event]) -> None:
    fallen = [team for team, ancient in world.ancients.items() if ancient.hp <= 0]
    if fallen:
        world.over = True
        world.end_reason = "ancient"
        world.winner = fallen[0].opponent if len(fallen) == 1 else None
        events.append(MatchEnded(winner=world.winner, reason="ancient"))
        return
    if world.sim_time >= world.settings.world.match_time_limit - 1e-9:
        world.over = True
        world.end_reason = "timeout"
        score_a, score_b = world.score(Team.A), world.score(Team.B)
        if score_a > score_b:
            world.winner = Team.A
        elif score_b > score_a:
            world.winner = Team.B
        else:
            world.winner = None
        events.append(MatchEnded(winner=world.winner, reason="timeout"))


# --- observations ------------------------------------------------------

@dataclass(frozen=True)
class HeroView:
    uid: int
    team: Team
    pos: Point
    hp: float
    max_hp: float
    mana: float
    max_mana: float
    level: int
    gold: int
    skill_points: int
    alive: bool
    at_base: bool
    frozen: bool
    healing_active: bool
    attack_range: float
    attack_damage: float
    spell_range: float
    attack_ready: bool
    items: dict[str, int]
    spell_levels: dict[str, int]
    spell_ready: dict[str, bool]


@dataclass(frozen=True)
class StructView:
    uid: int
    kind: str  # "tower" or "ancient"
    team: Team
    lane: str | None
    lane_index: int | None
    pos: Point
    hp: float
    max_hp: float
    alive: bool
    under_attack: bool
    guard_radius: float  # how far this structure protects the ground around it


@dataclass(frozen=True)
class UnitView:
    uid: int
    kind: str
    team: Team
    pos: Point
    hp: float
    max_hp: float
    lane: str | None = None  # creeps only


@dataclass(frozen=True)
class Observation:
    """Everything a scripted agent may act on for one tick."""

    sim_time: float
    team: Team
    you: HeroView
    enemy_hero: HeroView | None
    my_structures: tuple[StructView, ...]
    enemy_structures: tuple[StructView, ...]
    enemies_in_range: tuple[UnitView, ...]
    my_creeps: tuple[UnitView, ...]  # own soldiers report in from anywhere
    base_pos: Point


def _hero_view(world: WorldState, hero: Hero) -> HeroView:
    cfg = world.settings.world
    t = world.sim_time
    return HeroView(
        uid=hero.uid,
        team=hero.team,
        pos=hero.pos,
        hp=hero.hp,
        max_hp=hero.max_hp,
        mana=hero.mana,
        max_mana=hero.max_mana,
        level=hero.level,
        gold=hero.gold,
        skill_points=hero.skill_points,
        alive=hero.alive,
        at_base=dist_sq(hero.pos, world.base_pos[hero.team]) <= cfg.shop_radius**2,
        frozen=t < hero.frozen_until,
        healing_active=hero.potion_until > t,
        attack_range=cfg.hero_attack_range,
        spell_range=cfg.spell_cast_range,
        attack_ready=hero.attack_cooldown <= 1e-9,
        items=dict(hero.items),
        spell_levels=dict(hero.spell_levels),
        spell_ready={
            name: (
                hero.spell_levels[name] >= 1
                and hero.spell_cooldowns[name] <= 1e-9
                and hero.mana >= SPELL_COST[name]
            )
            for name in hero.spell_levels
        },
    )


def _struct_view(world: WorldState, unit: Tower | Ancient) -> StructView:
    cfg = world.settings.world
    under = (
        unit.last_damaged_at is not None
        and world.sim_time - unit.last_damaged_at <= UNDER_ATTACK_WINDOW
    )
    if isinstance(unit, Tower):
        return StructView(
            uid=unit.uid,
            kind="tower",
            team=unit.team,
            lane=unit.lane,
            lane_index=unit.lane_index,
            pos=unit.pos,
            hp=unit.hp,
            max_hp=unit.max_hp,
            alive=unit.alive,
            under_attack=under,
            guard_radius=cfg.tower_attack_range,
        )
    return StructView(
        uid=unit.uid,
        kind="ancient",
        team=unit.team,
        lane=None,
        lane_index=None,
        pos=unit.pos,
        hp=unit.hp,
        max_hp=unit.max_hp,
        alive=unit.alive,
        under_attack=under,
        guard_radius=cfg.shop_radius,  # fountain zone
    )


def observe(world: WorldState, team: Team) -> Observation:
    """Build the per-team view: structures are always visible, the
    enemy hero only within sight of the hero or an allied structure."""
    cfg = world.settings.world
    me = world.heroes[team]
    enemy = world.heroes[team.opponent]

    enemy_view = None
    if enemy.alive and _visible(world, team, enemy.pos):
        enemy_view = _hero_view(world, enemy)

    mine: list[StructView] = []
    theirs: list[StructView] = []
    for tower in world.towers:
        view = _struct_view(world, tower)
        (mine if tower.team is team else theirs).append(view)
    for owner, ancient in world.ancients.items():
        view = _struct_view(world, ancient)
        (mine if owner is team else theirs).append(view)

    in_range: list[UnitView] = []
    if me.alive:
        range_sq = cfg.hero_attack_range**2
        if enemy.alive and dist_sq(me.pos, enemy.pos) <= range_sq:
            in_range.append(
                UnitView(enemy.uid, "hero", enemy.team, enemy.pos, enemy.hp, enemy.max_hp)
            )
        for creep in world.creeps.values():
            if creep.team is not team and dist_sq(me.pos, creep.pos) <= range_sq:
                in_range.append(
                    UnitView(
                        creep.uid, "creep", creep.team, creep.pos,
                        creep.hp, creep.max_hp, creep.lane,
                    )
                )
        for tower in world.towers:
            if tower.team is not team and tower.alive and dist_sq(me.pos, tower.pos) <= range_sq:
                in_range.append(
                    UnitView(tower.uid, "tower", tower.team, tower.pos, tower.hp, tower.max_hp)
                )
        ancient = world.ancients[team.opponent]
        if ancient.alive and dist_sq(me.pos, ancient.pos) <= range_sq:
            in_range.append(
                UnitView(ancient.uid, "ancient", ancient.team, ancient.pos, ancient.hp, ancient.max_hp)
            )
        in_range.sort(key=lambda v: v.uid)

    own_creeps = tuple(
        UnitView(c.uid, "creep", c.team, c.pos, c.hp, c.max_hp, c.lane)
        for c in world.creeps.values()
        if c.team is team
    )

    return Observation(
        sim_time=world.sim_time,
        team=team,
        you=_hero_view(world, me),
        enemy_hero=enemy_view,
        my_structures=tuple(mine),
        enemy_structures=tuple(theirs),
        enemies_in_range=tuple(in_range),
        my_creeps=own_creeps,
        base_pos=world.base_pos[team],
    )


def _visible(world: WorldState, team: Team, pos: Point) -> bool:
    sight_sq = world.settings.world.sight_radius**2
    me = world.heroes[team]
    if me.alive and dist_sq(me.pos, pos) <= sight_sq:
        return True
    if dist_sq(world.ancients[team].pos, pos) <= sight_sq:
        return True
    for tower in world.towers:
        if tower.team is team and tower.alive and dist_sq(tower.pos, pos) <= sight_sq:
            return True
    return False
