"""Two-player cooperative environments: signaling game and grid kitchen."""

from tbs.envs.concepts import (
    ConceptSet,
    kitchen_concept_set,
    signaling_concept_set,
    KITCHEN_CONCEPT_SETS,
    KITCHEN_SHAPING_EVENTS,
    KITCHEN_SHAPING_MAGNITUDES,
)
from tbs.envs.layouts import Layout, load_layout, builtin_layout, BUILTIN_LAYOUTS
from tbs.envs.signaling import SignalingGame, signaling_reset, signaling_step
from tbs.envs.kitchen import KitchenEnv, kitchen_reset, kitchen_step, game_events
from tbs.envs.base import JointStep, make_env

__all__ = [
    "ConceptSet",
    "kitchen_concept_set",
    "signaling_concept_set",
    "KITCHEN_CONCEPT_SETS",
    "KITCHEN_SHAPING_EVENTS",
    "KITCHEN_SHAPING_MAGNITUDES",
    "Layout",
    "load_layout",
    "builtin_layout",
    "BUILTIN_LAYOUTS",
    "SignalingGame",
    "signaling_reset",
    "signaling_step",
    "KitchenEnv",
    "kitchen_reset",
    "kitchen_step",
    "game_events",
    "JointStep",
    "make_env",
]
