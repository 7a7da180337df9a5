"""Value functions and the greedy policies they induce.

A trained Q-function doubles as its greedy policy: ties in the argmax break
toward the lowest action index, so greedy behavior is deterministic and
reproducible. Tabular is the default representation; a linear head over
per-slot one-hot observation features is available for larger state spaces.

Policies serialize to a versioned dict artifact carrying the representation
kind, parameters, action count, and provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ARTIFACT_VERSION = 1


def _argmax(values) -> int:
    best, best_v = 0, values[0]
    for i in range(1, len(values)):
        if values[i] > best_v:
            best, best_v = i, values[i]
    return best


class TabularQ:
    """Q table keyed on (possibly truncated) observation tuples.

    ``key_drop_last`` trims trailing observation slots before lookup; the
    kitchen drops its frame counter this way so values generalize over time.
    Unvisited entries read as zeros.
    """

    representation = "tabular"

    def __init__(self, action_count: int, key_drop_last: int = 0):
        self.action_count = action_count
        self.key_drop_last = key_drop_last
        self.table: dict[tuple, list[float]] = {}

    def key(self, obs) -> tuple:
        return tuple(obs[: len(obs) - self.key_drop_last]) if self.key_drop_last else tuple(obs)

    def q_values(self, obs) -> list[float]:
        return self.table.get(self.key(obs), [0.0] * self.action_count)

    def greedy(self, obs) -> int:
        return _argmax(self.q_values(obs))

    def max_q(self, obs) -> float:
        return max(self.q_values(obs))

    def update(self, obs, action: int, delta: float, lr: float) -> None:
        key = self.key(obs)
        row = self.table.get(key)
        if row is None:
            row = [0.0] * self.action_count
            self.table[key] = row
        row[action] += lr * delta

    def act(self, obs) -> int:
        return self.greedy(obs)

    def finite(self) -> bool:
        return all(np.isfinite(row).all() for row in self.table.values())

    def to_artifact(self, provenance: dict | None = None) -> dict:
        return {
            "format_version": ARTIFACT_VERSION,
            "representation": self.representation,
            "action_count": self.action_count,
            "key_drop_last": self.key_drop_last,
            "table": {",".join(map(str, k)): v for k, v in sorted(self.table.items())},
            "provenance": provenance or {},
        }

    @staticmethod
    def from_artifact(data: dict) -> "TabularQ":
        policy = TabularQ(data["action_count"], data.get("key_drop_last", 0))
        for key, row in data["table"].items():
            parts = tuple(int(x) for x in key.split(",")) if key else ()
            policy.table[parts] = [float(v) for v in row]
        return policy


class LinearQ:
    """Linear Q over concatenated one-hot features of each observation slot."""

    representation = "linear"

    def __init__(self, action_count: int, slot_sizes: tuple[int, ...], key_drop_last: int = 0):
        self.action_count = action_count
        self.slot_sizes = tuple(slot_sizes)
        self.key_drop_last = key_drop_last
        self.offsets = np.concatenate([[0], np.cumsum(self.slot_sizes[:-1])]).astype(int)
        self.weights = np.zeros((action_count, int(sum(self.slot_sizes))))

    def _indices(self, obs) -> np.ndarray:
        values = obs[: len(obs) - self.key_drop_last] if self.key_drop_last else obs
        return self.offsets + np.asarray(values, dtype=int)

    def q_values(self, obs) -> np.ndarray:
        return self.weights[:, self._indices(obs)].sum(axis=1)

    def greedy(self, obs) -> int:
        return _argmax(self.q_values(obs))

    def max_q(self, obs) -> float:
        return float(self.q_values(obs).max())

    def update(self, obs, action: int, delta: float, lr: float) -> None:
        self.weights[action, self._indices(obs)] += lr * delta

    def act(self, obs) -> int:
        return self.greedy(obs)

    def finite(self) -> bool:
        return bool(np.isfinite(self.weights).all())

    def to_artifact(self, provenance: dict | None = None) -> dict:
        return {
            "format_version": ARTIFACT_VERSION,
            "representation": self.representation,
            "action_count": self.action_count,
            "key_drop_last": self.key_drop_last,
            "slot_sizes": list(self.slot_sizes),
            "weights": self.weights.tolist(),
            "provenance": provenance or {},
        }

    @staticmethod
    def from_artifact(data: dict) -> "LinearQ":
        policy = LinearQ(
            data["action_count"], tuple(data["slot_sizes"]), data.get("key_drop_last", 0)
        )
        policy.weights = np.asarray(data["weights"], dtype=float)
        return policy


def policy_from_artifact(data: dict):
    kind = data.get("representation")
    if kind == "tabular":
        return TabularQ.from_artifact(data)
    if kind == "linear":
        return LinearQ.from_artifact(data)
    raise ValueError(f"unknown policy representation: {kind!r}")


def make_q(env, representation: str = "tabular"):
    """Fresh value function sized for an environment."""
    drop = 1 if env.name == "kitchen" else 0
    if representation == "tabular":
        return TabularQ(env.num_actions, key_drop_last=drop)
    if representation == "linear":
        return LinearQ(env.num_actions, onehot_slot_sizes(env), key_drop_last=drop)
    raise ValueError(f"unknown representation: {representation!r}")


def onehot_slot_sizes(env) -> tuple[int, ...]:
    """Cardinality of every observation slot (excluding a dropped frame)."""
    sizes = [size for _, size in env.obs_fields]
    if env.name == "kitchen":
        sizes.extend([4, 21, 2] * env.num_pots)
        sizes.extend([4] * env.num_counters)
    return tuple(sizes)


class EpsilonPolicy:
    """Greedy policy with epsilon-uniform exploration noise."""

    def __init__(self, policy, epsilon: float, rng: np.random.Generator):
        self.policy = policy
        self.epsilon = epsilon
        self.rng = rng
        self.action_count = policy.action_count

    def act(self, obs) -> int:
        if self.rng.random() < self.epsilon:
            return int(self.rng.integers(self.action_count))
        return self.policy.act(obs)


@dataclass
class PolicyPair:
    """Two co-trained seat policies plus their measured self-play return."""

    policy1: object
    policy2: object
    selfplay_return: float
    provenance: dict = field(default_factory=dict)

    def to_artifact(self) -> dict:
        return {
            "format_version": ARTIFACT_VERSION,
            "policy1": self.policy1.to_artifact(),
            "policy2": self.policy2.to_artifact(),
            "selfplay_return": self.selfplay_return,
            "provenance": self.provenance,
        }

    @staticmethod
    def from_artifact(data: dict) -> "PolicyPair":
        return PolicyPair(
            policy_from_artifact(data["policy1"]),
            policy_from_artifact(data["policy2"]),
            float(data["selfplay_return"]),
            data.get("provenance", {}),
        )
