"""Value-based learning: joint self-play training and best responses."""

from tbs.learners.targets import compute_lambda_targets
from tbs.learners.shaping import ShapingSpec, sample_shaping, anneal_multiplier
from tbs.learners.policies import (
    TabularQ,
    LinearQ,
    EpsilonPolicy,
    PolicyPair,
    policy_from_artifact,
)
from tbs.learners.config import TrainConfig
from tbs.learners.selfplay import train_selfplay_pair
from tbs.learners.best_response import train_best_response

__all__ = [
    "compute_lambda_targets",
    "ShapingSpec",
    "sample_shaping",
    "anneal_multiplier",
    "TabularQ",
    "LinearQ",
    "EpsilonPolicy",
    "PolicyPair",
    "policy_from_artifact",
    "TrainConfig",
    "train_selfplay_pair",
    "train_best_response",
]
