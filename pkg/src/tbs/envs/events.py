"""Observer-side event detection from raw observation streams.

Theory-of-mind features must be computable from the cooperator's own
observations, both when training on recorded trajectories and when acting
online. These detectors reconstruct the *partner's* interaction events from
consecutive observations, so the feature pipeline never touches
environment-internal event annotations.

A detector is fed the observer's observations one step at a time; the vector
returned for the observation at step t describes the partner events of the
transition that ended at step t (i.e. what the partner just did). The first
observation of an episode therefore always yields zeros.

Detection is exact for the outcome-based concept sets because both
environments are fully observable. The kitchen's ``action_based`` set has
one unavoidable blind spot: a no-op interact leaves no observable trace and
is reported as ``stay``, and a blocked move in the already-faced direction
looks the same as standing still.
"""

from __future__ import annotations

import numpy as np

from tbs.envs.concepts import (
    SIGNALING_BAIL_INDEX,
    kitchen_concept_index,
    signaling_demo_index,
)
from tbs.envs.kitchen import (
    HELD_DISH,
    HELD_NONE,
    HELD_ONION,
    HELD_PLATE,
    INTERACT,
    STAY,
    _DELTAS,
    KitchenEnv,
)
from tbs.envs.layouts import COUNTER, ONION_PILE, PLATE_PILE, POT, SERVE
from tbs.envs.signaling import REVEAL, SignalingGame


class SignalingEventDetector:
    """Reads codebook demonstrations off reveal-phase observations."""

    def __init__(self, env: SignalingGame):
        self.concepts = env.concept_set

    def reset(self) -> None:
        pass

    def feed(self, obs: tuple[int, ...]) -> np.ndarray:
        vec = self.concepts.zeros()
        phase, _, partner_action, revealed = obs
        if phase == REVEAL:
            if partner_action == 5:
                vec[SIGNALING_BAIL_INDEX] = 1
            elif 1 <= partner_action <= 4 and 1 <= revealed <= 4:
                vec[signaling_demo_index(revealed, partner_action - 1)] = 1
        return vec


# held-transition -> {faced tile kind -> base event}
_HELD_TRANSITIONS = {
    (HELD_NONE, HELD_ONION): {
        ONION_PILE: "onion_pickup_from_pile",
        COUNTER: "onion_pickup_from_counter",
    },
    (HELD_NONE, HELD_PLATE): {
        PLATE_PILE: "plate_pickup_from_pile",
        COUNTER: "plate_pickup_from_counter",
    },
    (HELD_NONE, HELD_DISH): {COUNTER: "dish_pickup_from_counter"},
    (HELD_ONION, HELD_NONE): {
        POT: "onion_drop_in_pot",
        COUNTER: "onion_drop_on_counter",
    },
    (HELD_PLATE, HELD_NONE): {COUNTER: "plate_drop_on_counter"},
    (HELD_PLATE, HELD_DISH): {POT: "dish_pickup_from_pot"},
    (HELD_DISH, HELD_NONE): {
        SERVE: "dish_delivery",
        COUNTER: "dish_drop_on_counter",
    },
}


class KitchenEventDetector:
    """Diffs consecutive observations to recover partner interactions."""

    _CELL, _ORIENT, _HELD = 3, 4, 5  # partner block indices in the observation

    def __init__(self, env: KitchenEnv):
        self.layout = env.layout
        self.granularity = env.granularity
        self.concepts = env.concept_set
        self._prev: tuple[int, ...] | None = None

    def reset(self) -> None:
        self._prev = None

    def _partner(self, obs: tuple[int, ...]) -> tuple[tuple[int, int], int, int]:
        cell, orient, held = obs[self._CELL], obs[self._ORIENT], obs[self._HELD]
        return (cell // self.layout.width, cell % self.layout.width), orient, held

    def feed(self, obs: tuple[int, ...]) -> np.ndarray:
        vec = self.concepts.zeros()
        prev, self._prev = self._prev, obs
        if prev is None:
            return vec

        pos_before, orient_before, held_before = self._partner(prev)
        pos_now, orient_now, held_now = self._partner(obs)

        base_event = None
        tile_instance = 0
        if held_now != held_before:
            dr, dc = _DELTAS[orient_now]
            faced = (pos_now[0] + dr, pos_now[1] + dc)
            tile = self.layout.tile(*faced)
            base_event = _HELD_TRANSITIONS[(held_before, held_now)][tile]
            tile_instance = self.layout.cells_of(tile).index(faced)

        if self.granularity == "action_based":
            action = self._infer_action(
                pos_before, pos_now, orient_before, orient_now, base_event
            )
            vec[action] = 1
            return vec

        idx = kitchen_concept_index(self.granularity, base_event, tile_instance, 0)
        if idx is not None:
            vec[idx] = 1
        return vec

    @staticmethod
    def _infer_action(pos_before, pos_now, orient_before, orient_now, base_event) -> int:
        if base_event is not None:
            return INTERACT
        if pos_now != pos_before:
            delta = (pos_now[0] - pos_before[0], pos_now[1] - pos_before[1])
            return next(a for a, d in _DELTAS.items() if d == delta)
        if orient_now != orient_before:
            return orient_now  # blocked move still turned the agent
        return STAY  # indistinguishable from a no-op interact


def make_detector(env):
    if isinstance(env, SignalingGame):
        return SignalingEventDetector(env)
    if isinstance(env, KitchenEnv):
        return KitchenEventDetector(env)
    raise TypeError(f"no event detector for environment {env!r}")
