"""Simplified two-cook grid kitchen.

Two agents cooperate to deliver onion soup: put three onions in a pot, wait
20 frames while it cooks, collect the soup with a plate, and bring the dish
to a serve tile for a reward of 20. Episodes run a fixed 400 frames.

Actions: 0 up, 1 down, 2 left, 3 right, 4 stay, 5 interact. Movement actions
always set orientation; the position only changes when the target cell is
free floor. Simultaneous conflicts (same target cell, or a position swap)
cancel both moves. Interact resolves against the faced tile and the held
item; an inapplicable interact is a silent no-op.

Step order within a frame: pots tick first, then movement, then interacts
(seat 1 before seat 2), so a pot that finishes cooking on frame t can be
plated on frame t.

Held items: 0 none, 1 onion, 2 plate, 3 dish.

Observation (both seats, ego-first, fixed length):
  [own_cell, own_orient, own_held, other_cell, other_orient, other_held,
   (onion_count, cook_timer, done) per pot, item per counter, frame]
with cells flattened row-major. The layout itself is static and identified
by the environment instance.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from tbs.envs.concepts import (
    KITCHEN_SHAPING_EVENTS,
    KITCHEN_SHAPING_MAGNITUDES,
    ConceptSet,
    kitchen_concept_index,
    kitchen_concept_set,
    kitchen_shaping_index,
)
from tbs.envs.layouts import COUNTER, FLOOR, ONION_PILE, PLATE_PILE, POT, SERVE, Layout
from tbs.errors import InvalidActionError

UP, DOWN, LEFT, RIGHT, STAY, INTERACT = range(6)
NUM_ACTIONS = 6
MAX_FRAMES = 400
COOK_TIME = 20
POT_CAPACITY = 3
DELIVERY_REWARD = 20.0

HELD_NONE, HELD_ONION, HELD_PLATE, HELD_DISH = range(4)

_DELTAS = {UP: (-1, 0), DOWN: (1, 0), LEFT: (0, -1), RIGHT: (0, 1)}


@dataclass(frozen=True)
class PotState:
    onion_count: int = 0
    cook_timer: int = COOK_TIME
    done: bool = False


@dataclass(frozen=True)
class InteractRecord:
    """Raw outcome of one agent's action within a step."""

    action: int
    base_event: str | None  # one of KITCHEN_BASE_EVENTS, or None
    tile_instance: int  # index of the faced tile among tiles of its kind


@dataclass(frozen=True)
class KitchenState:
    layout_id: str
    positions: tuple[tuple[int, int], tuple[int, int]]
    orientations: tuple[int, int]
    held: tuple[int, int]
    pots: tuple[PotState, ...]
    counters: tuple[int, ...]  # held-item codes per counter cell
    frame: int
    cumulative_reward: float


def kitchen_reset(layout: Layout, seed: int = 0) -> KitchenState:
    """Deterministic initial state; the seed is accepted for API symmetry."""
    return KitchenState(
        layout_id=layout.layout_id,
        positions=layout.starts,
        orientations=(DOWN, DOWN),
        held=(HELD_NONE, HELD_NONE),
        pots=tuple(PotState() for _ in layout.cells_of(POT)),
        counters=tuple(0 for _ in layout.cells_of(COUNTER)),
        frame=0,
        cumulative_reward=0.0,
    )


def _tick_pots(pots: tuple[PotState, ...]) -> tuple[PotState, ...]:
    out = []
    for pot in pots:
        if pot.onion_count == POT_CAPACITY and pot.cook_timer > 0:
            timer = pot.cook_timer - 1
            out.append(PotState(pot.onion_count, timer, timer == 0))
        else:
            out.append(pot)
    return tuple(out)


def _resolve_moves(
    layout: Layout,
    positions: tuple[tuple[int, int], tuple[int, int]],
    actions: tuple[int, int],
) -> tuple[tuple[tuple[int, int], tuple[int, int]], tuple[int, int]]:
    """Apply movement with symmetric conflict cancellation."""
    orients = []
    proposed = []
    for idx, action in enumerate(actions):
        pos = positions[idx]
        if action in _DELTAS:
            orients.append(action)
            dr, dc = _DELTAS[action]
            target = (pos[0] + dr, pos[1] + dc)
            in_bounds = 0 <= target[0] < layout.height and 0 <= target[1] < layout.width
            if in_bounds and layout.tile(*target) == FLOOR:
                proposed.append(target)
            else:
                proposed.append(pos)
        else:
            orients.append(None)
            proposed.append(pos)

    p1, p2 = proposed
    pos1, pos2 = positions
    if p1 == p2:
        p1, p2 = pos1, pos2
    if p1 == pos2 and p2 == pos1:
        p1, p2 = pos1, pos2
    if p1 == pos2 and p2 == pos2:
        p1 = pos1
    if p2 == pos1 and p1 == pos1:
        p2 = pos2
    return (p1, p2), tuple(orients)


class _Interactor:
    """Mutable scratch space for resolving interacts sequentially."""

    def __init__(self, layout: Layout, state: KitchenState):
        self.layout = layout
        self.pot_cells = layout.cells_of(POT)
        self.counter_cells = layout.cells_of(COUNTER)
        self.held = list(state.held)
        self.pots = list(state.pots)
        self.counters = list(state.counters)
        self.reward = 0.0

    def interact(self, agent: int, pos: tuple[int, int], orient: int) -> InteractRecord:
        dr, dc = _DELTAS[orient]
        faced = (pos[0] + dr, pos[1] + dc)
        if not (0 <= faced[0] < self.layout.height and 0 <= faced[1] < self.layout.width):
            return InteractRecord(INTERACT, None, 0)
        tile = self.layout.tile(*faced)
        held = self.held[agent]

        if tile == ONION_PILE and held == HELD_NONE:
            self.held[agent] = HELD_ONION
            inst = self.layout.cells_of(ONION_PILE).index(faced)
            return InteractRecord(INTERACT, "onion_pickup_from_pile", inst)

        if tile == PLATE_PILE and held == HELD_NONE:
            self.held[agent] = HELD_PLATE
            inst = self.layout.cells_of(PLATE_PILE).index(faced)
            return InteractRecord(INTERACT, "plate_pickup_from_pile", inst)

        if tile == POT:
            inst = self.pot_cells.index(faced)
            pot = self.pots[inst]
            if held == HELD_ONION and pot.onion_count < POT_CAPACITY:
                count = pot.onion_count + 1
                self.pots[inst] = PotState(count, COOK_TIME, False)
                self.held[agent] = HELD_NONE
                return InteractRecord(INTERACT, "onion_drop_in_pot", inst)
            if held == HELD_PLATE and pot.done:
                self.pots[inst] = PotState()
                self.held[agent] = HELD_DISH
                return InteractRecord(INTERACT, "dish_pickup_from_pot", inst)
            return InteractRecord(INTERACT, None, inst)

        if tile == COUNTER:
            inst = self.counter_cells.index(faced)
            item = self.counters[inst]
            if held != HELD_NONE and item == 0:
                self.counters[inst] = held
                self.held[agent] = HELD_NONE
                name = {HELD_ONION: "onion", HELD_PLATE: "plate", HELD_DISH: "dish"}[held]
                return InteractRecord(INTERACT, f"{name}_drop_on_counter", inst)
            if held == HELD_NONE and item != 0:
                self.counters[inst] = 0
                self.held[agent] = item
                name = {HELD_ONION: "onion", HELD_PLATE: "plate", HELD_DISH: "dish"}[item]
                return InteractRecord(INTERACT, f"{name}_pickup_from_counter", inst)
            return InteractRecord(INTERACT, None, inst)

        if tile == SERVE and held == HELD_DISH:
            self.held[agent] = HELD_NONE
            self.reward += DELIVERY_REWARD
            inst = self.layout.cells_of(SERVE).index(faced)
            return InteractRecord(INTERACT, "dish_delivery", inst)

        return InteractRecord(INTERACT, None, 0)


def kitchen_step(
    layout: Layout, state: KitchenState, joint_action: tuple[int, int]
) -> tuple[KitchenState, float, tuple[InteractRecord, InteractRecord], bool]:
    """Advance one frame; returns (state, reward, raw records, done)."""
    if state.frame >= MAX_FRAMES:
        raise InvalidActionError("episode is over; reset before stepping")
    for action in joint_action:
        if not 0 <= action < NUM_ACTIONS:
            raise InvalidActionError(f"kitchen action {action!r} not in 0..5")

    pots = _tick_pots(state.pots)
    ticked = replace(state, pots=pots)

    positions, new_orients = _resolve_moves(layout, ticked.positions, joint_action)
    orientations = tuple(
        new if new is not None else old
        for new, old in zip(new_orients, ticked.orientations)
    )

    scratch = _Interactor(layout, replace(ticked, positions=positions))
    records = []
    for agent in (0, 1):
        if joint_action[agent] == INTERACT:
            records.append(scratch.interact(agent, positions[agent], orientations[agent]))
        else:
            records.append(InteractRecord(joint_action[agent], None, 0))

    reward = scratch.reward
    frame = state.frame + 1
    next_state = KitchenState(
        layout_id=state.layout_id,
        positions=positions,
        orientations=orientations,
        held=tuple(scratch.held),
        pots=tuple(scratch.pots),
        counters=tuple(scratch.counters),
        frame=frame,
        cumulative_reward=state.cumulative_reward + reward,
    )
    return next_state, reward, (records[0], records[1]), frame >= MAX_FRAMES


def game_events(records: tuple[InteractRecord, InteractRecord]) -> np.ndarray:
    """Per-agent indicators over the six shaping events, shape (2, 6)."""
    out = np.zeros((2, len(KITCHEN_SHAPING_EVENTS)), dtype=np.int8)
    for agent, record in enumerate(records):
        if record.base_event is not None:
            idx = kitchen_shaping_index(record.base_event)
            if idx is not None:
                out[agent, idx] = 1
    return out


def kitchen_observe(layout: Layout, state: KitchenState, agent_index: int) -> tuple[int, ...]:
    """Ego-first flat integer observation for seat 1 or 2."""
    if agent_index not in (1, 2):
        raise ValueError(f"agent_index must be 1 or 2, got {agent_index}")
    me = agent_index - 1
    other = 1 - me
    width = layout.width

    def block(idx: int) -> list[int]:
        r, c = state.positions[idx]
        return [r * width + c, state.orientations[idx], state.held[idx]]

    obs = block(me) + block(other)
    for pot in state.pots:
        obs.extend([pot.onion_count, pot.cook_timer, int(pot.done)])
    obs.extend(state.counters)
    obs.append(state.frame)
    return tuple(obs)


class KitchenEnv:
    """Joint-action adapter with a configured concept granularity."""

    name = "kitchen"
    num_actions = NUM_ACTIONS
    max_steps = MAX_FRAMES
    shaping_event_count = len(KITCHEN_SHAPING_EVENTS)
    shaping_base_magnitudes = KITCHEN_SHAPING_MAGNITUDES
    observed_seat = 1

    def __init__(self, layout: Layout, concept_granularity: str = "coarse"):
        self.layout = layout
        self.granularity = concept_granularity
        self.concept_set: ConceptSet = kitchen_concept_set(concept_granularity)
        cells = layout.height * layout.width
        self.obs_fields = (
            ("own_cell", cells),
            ("own_orient", 4),
            ("own_held", 4),
            ("other_cell", cells),
            ("other_orient", 4),
            ("other_held", 4),
        )
        self.num_pots = len(layout.cells_of(POT))
        self.num_counters = len(layout.cells_of(COUNTER))

    def reset(self, seed: int = 0) -> KitchenState:
        return kitchen_reset(self.layout, seed)

    def observe(self, state: KitchenState, agent_index: int) -> tuple[int, ...]:
        return kitchen_observe(self.layout, state, agent_index)

    def step(self, state: KitchenState, a1: int, a2: int):
        from tbs.envs.base import JointStep

        next_state, reward, records, done = kitchen_step(self.layout, state, (a1, a2))
        events = []
        for record in records:
            vec = self.concept_set.zeros()
            idx = kitchen_concept_index(
                self.granularity, record.base_event, record.tile_instance, record.action
            )
            if idx is not None:
                vec[idx] = 1
            events.append(vec)
        shaping = game_events(records)
        return JointStep(
            state=next_state,
            reward=reward,
            events=(events[0], events[1]),
            shaping_events=(shaping[0], shaping[1]),
            done=done,
        )

    def table_key(self, obs: tuple[int, ...]) -> tuple[int, ...]:
        # Drop the trailing frame counter so value tables generalize over time.
        return obs[:-1]

    def spec(self) -> dict:
        return {
            "name": self.name,
            "layout": self.layout.layout_id,
            "concept_set": self.granularity,
        }
