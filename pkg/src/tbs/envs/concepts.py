"""Concept sets: the vocabularies of high-level intentions agents can signal.

A concept set names the M distinct ways an agent can meaningfully interact
with its environment. Environments annotate every transition with a per-agent
interaction vector over the active concept set (at most one entry set per
agent per step); the theory-of-mind models predict these vectors.

Kitchen sets come in four granularities:

* ``granular`` (44): each of the 11 base interact outcomes split by which
  special-tile instance (up to 4 per tile type) was used.
* ``coarse`` (11): the base interact outcomes.
* ``very_coarse`` (6): collapsed by item kind only (pickup/drop x
  onion/plate/dish; delivering counts as dropping a dish).
* ``action_based`` (6): the raw low-level action set.

The signaling game uses a single ``codebook`` set: one concept per
(number, signal) demonstration plus one for bailing out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Base interact outcomes in the kitchen, in canonical order.
KITCHEN_BASE_EVENTS = [
    "onion_pickup_from_pile",
    "plate_pickup_from_pile",
    "dish_pickup_from_pot",
    "onion_pickup_from_counter",
    "plate_pickup_from_counter",
    "dish_pickup_from_counter",
    "onion_drop_in_pot",
    "onion_drop_on_counter",
    "plate_drop_on_counter",
    "dish_drop_on_counter",
    "dish_delivery",
]

# Item-kind collapse used by the very_coarse set.
_VERY_COARSE_NAMES = [
    "onion_pickup",
    "plate_pickup",
    "dish_pickup",
    "onion_drop",
    "plate_drop",
    "dish_drop",
]

_VERY_COARSE_OF_BASE = {
    "onion_pickup_from_pile": "onion_pickup",
    "plate_pickup_from_pile": "plate_pickup",
    "dish_pickup_from_pot": "dish_pickup",
    "onion_pickup_from_counter": "onion_pickup",
    "plate_pickup_from_counter": "plate_pickup",
    "dish_pickup_from_counter": "dish_pickup",
    "onion_drop_in_pot": "onion_drop",
    "onion_drop_on_counter": "onion_drop",
    "plate_drop_on_counter": "plate_drop",
    "dish_drop_on_counter": "dish_drop",
    "dish_delivery": "dish_drop",
}

KITCHEN_ACTIONS = ["up", "down", "left", "right", "stay", "interact"]

# Tile instances distinguished by the granular set, per base event.
MAX_TILE_INSTANCES = 4

# Shaping events and base reward magnitudes for the kitchen. Pickup-side
# events carry roughly 3x the magnitude of per-onion events because a dish
# needs three onions but only one plate/pickup/delivery.
KITCHEN_SHAPING_EVENTS = [
    "place_onion_in_pot",
    "pickup_plate",
    "pickup_soup",
    "pickup_from_counter",
    "drop_on_counter",
    "deliver_soup",
]
KITCHEN_SHAPING_MAGNITUDES = np.array([0.15, 0.5, 0.5, 0.15, 0.15, 0.5])

_SHAPING_OF_BASE = {
    "onion_drop_in_pot": "place_onion_in_pot",
    "plate_pickup_from_pile": "pickup_plate",
    "dish_pickup_from_pot": "pickup_soup",
    "onion_pickup_from_counter": "pickup_from_counter",
    "plate_pickup_from_counter": "pickup_from_counter",
    "dish_pickup_from_counter": "pickup_from_counter",
    "onion_drop_on_counter": "drop_on_counter",
    "plate_drop_on_counter": "drop_on_counter",
    "dish_drop_on_counter": "drop_on_counter",
    "dish_delivery": "deliver_soup",
}

SIGNALING_NUMBERS = [1, 2, 3, 4]
SIGNALING_LETTERS = ["A", "B", "C", "D"]


@dataclass(frozen=True)
class ConceptSet:
    """Ordered list of concept identifiers for one environment."""

    name: str
    concepts: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.concepts)

    def index(self, concept: str) -> int:
        return self.concepts.index(concept)

    def zeros(self) -> np.ndarray:
        return np.zeros(self.size, dtype=np.int8)

    def one_hot(self, index: int) -> np.ndarray:
        vec = self.zeros()
        vec[index] = 1
        return vec


def _granular_names() -> tuple[str, ...]:
    names = []
    for base in KITCHEN_BASE_EVENTS:
        for inst in range(MAX_TILE_INSTANCES):
            names.append(f"{base}_{inst}")
    return tuple(names)


def kitchen_concept_set(granularity: str) -> ConceptSet:
    """Build one of the four kitchen concept sets by granularity name."""
    if granularity == "granular":
        return ConceptSet("granular", _granular_names())
    if granularity == "coarse":
        return ConceptSet("coarse", tuple(KITCHEN_BASE_EVENTS))
    if granularity == "very_coarse":
        return ConceptSet("very_coarse", tuple(_VERY_COARSE_NAMES))
    if granularity == "action_based":
        return ConceptSet("action_based", tuple(KITCHEN_ACTIONS))
    raise ValueError(f"unknown kitchen concept granularity: {granularity!r}")


KITCHEN_CONCEPT_SETS = ("granular", "coarse", "very_coarse", "action_based")


def kitchen_concept_index(
    granularity: str, base_event: str, tile_instance: int, action: int
) -> int | None:
    """Map a raw interact record onto the active concept set.

    ``base_event`` is None-safe only at the call site; movement steps map to
    a concept only under the action_based set.
    """
    if granularity == "action_based":
        return action
    if base_event is None:
        return None
    if granularity == "granular":
        inst = min(tile_instance, MAX_TILE_INSTANCES - 1)
        return KITCHEN_BASE_EVENTS.index(base_event) * MAX_TILE_INSTANCES + inst
    if granularity == "coarse":
        return KITCHEN_BASE_EVENTS.index(base_event)
    if granularity == "very_coarse":
        return _VERY_COARSE_NAMES.index(_VERY_COARSE_OF_BASE[base_event])
    raise ValueError(f"unknown kitchen concept granularity: {granularity!r}")


def kitchen_shaping_index(base_event: str) -> int | None:
    """Shaping-event slot for a base interact outcome, if it has one.

    Onion pile pickups carry no shaping reward.
    """
    name = _SHAPING_OF_BASE.get(base_event)
    return None if name is None else KITCHEN_SHAPING_EVENTS.index(name)


def signaling_concept_set() -> ConceptSet:
    """Codebook-demonstration concepts for the signaling game.

    One concept per (hidden number, action) pair that a completed round can
    reveal, plus a bail concept. A pair entry fires for Alice as
    (number, signal shown) and for Bob as (number, guess made) when the round
    resolves, so an observer accumulating these events sees exactly the
    partner's number-to-action convention.
    """
    names = []
    for n in SIGNALING_NUMBERS:
        for letter in SIGNALING_LETTERS:
            names.append(f"demo_{n}_{letter}")
    names.append("bail")
    return ConceptSet("codebook", tuple(names))


def signaling_demo_index(number: int, action_idx: int) -> int:
    """Concept index for demonstrating (number 1-4, action 0-3)."""
    return (number - 1) * len(SIGNALING_LETTERS) + action_idx


SIGNALING_BAIL_INDEX = 16

# The signaling game's shaping events are its codebook concepts; a flat base
# magnitude lets the random draws pick an arbitrary preferred convention.
SIGNALING_SHAPING_MAGNITUDES = np.full(17, 0.25)
SIGNALING_SHAPING_MAGNITUDES[SIGNALING_BAIL_INDEX] = 0.05
