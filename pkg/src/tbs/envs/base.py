"""Common joint-environment surface shared by learners, rollouts, and eval."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from tbs.envs.kitchen import KitchenEnv
from tbs.envs.layouts import builtin_layout, load_layout
from tbs.envs.signaling import SignalingGame


@dataclass(frozen=True)
class JointStep:
    """Result of one joint step.

    ``events`` are per-seat interaction vectors over the environment's active
    concept set; ``shaping_events`` are per-seat indicators over the
    environment's shaping-event set (the same vectors for the signaling game,
    the six soup-making events for the kitchen).
    """

    state: Any
    reward: float
    events: tuple[np.ndarray, np.ndarray]
    shaping_events: tuple[np.ndarray, np.ndarray]
    done: bool


def make_env(env_config: dict):
    """Build a joint environment from a run-config ``env`` section."""
    name = env_config.get("name")
    if name == "signaling":
        return SignalingGame()
    if name == "kitchen":
        if env_config.get("layout_file"):
            layout = load_layout(env_config["layout_file"])
        else:
            layout = builtin_layout(env_config.get("layout", "cramped_room"))
        return KitchenEnv(layout, env_config.get("concept_set", "coarse"))
    raise ValueError(f"unknown environment name: {name!r}")


def observe(env, state, agent_index: int):
    """Environment-agnostic observation accessor."""
    return env.observe(state, agent_index)
