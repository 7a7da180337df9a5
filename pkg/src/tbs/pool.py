"""Partner populations: trained pools, planted pools, and greedy rollouts.

A pool is an ordered list of co-trained policy pairs over one environment;
pair indices are stable and referenced by every downstream matrix and
cluster. Training and held-out pools are built from different master seeds
and record per-pair seed provenance so evaluation can verify disjointness.

Planted pools bypass learning: each pair deterministically plays an explicit
number-to-signal codebook (Alice) and its inverse decoder (Bob). They give
the signaling experiments exact, fast convention families.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from tbs.envs.base import make_env
from tbs.envs.signaling import alice_codebook_table, bob_decoder_table
from tbs.errors import TrainingDivergedError
from tbs.learners.config import TrainConfig
from tbs.learners.policies import PolicyPair, TabularQ
from tbs.learners.selfplay import (
    greedy_selfplay_return,
    sample_shaping_pair,
    train_selfplay_pair,
)
from tbs.seeding import derive_seed


@dataclass
class Trajectory:
    """One greedy episode with everything the downstream stages consume."""

    observations: tuple[list[tuple], list[tuple]]  # per seat, length T+1
    actions: list[tuple[int, int]]
    rewards: list[float]
    events: tuple[list[np.ndarray], list[np.ndarray]]  # per seat, length T

    @property
    def sparse_return(self) -> float:
        return float(sum(self.rewards))


@dataclass
class PartnerPool:
    pairs: list[PolicyPair]
    env_spec: dict
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pairs)

    def pair_seeds(self) -> set[int]:
        return {p.provenance.get("seed") for p in self.pairs}

    def manifest(self) -> dict:
        return {
            "env_spec": self.env_spec,
            "provenance": self.provenance,
            "pairs": [
                {
                    "index": i,
                    "seed": p.provenance.get("seed"),
                    "selfplay_return": p.selfplay_return,
                    "shaping1": p.provenance.get("shaping1"),
                    "shaping2": p.provenance.get("shaping2"),
                }
                for i, p in enumerate(self.pairs)
            ],
        }

    def to_artifact(self) -> dict:
        return {
            "manifest": self.manifest(),
            "pairs": [p.to_artifact() for p in self.pairs],
        }

    @staticmethod
    def from_artifact(data: dict) -> "PartnerPool":
        manifest = data["manifest"]
        return PartnerPool(
            [PolicyPair.from_artifact(p) for p in data["pairs"]],
            manifest["env_spec"],
            manifest.get("provenance", {}),
        )


def _build_pair(env_spec: dict, config: TrainConfig, master_seed: int, index: int) -> PolicyPair:
    """Train one pool pair, retrying on divergence with fresh seeds."""
    env = make_env(env_spec)
    last_error: TrainingDivergedError | None = None
    for attempt in range(4):
        pair_seed = derive_seed(master_seed, "pair", index, attempt)
        rng = np.random.default_rng(derive_seed(master_seed, "shaping", index, attempt))
        shaping = sample_shaping_pair(env, rng, config)
        try:
            return train_selfplay_pair(env, shaping, config.with_seed(pair_seed))
        except TrainingDivergedError as err:
            last_error = err
    raise TrainingDivergedError(
        f"pair {index} diverged on all 4 attempts: {last_error}"
    )


def build_pool(
    env_spec: dict,
    n: int,
    config: TrainConfig,
    seed: int,
    workers: int = 1,
) -> PartnerPool:
    """Train ``n`` self-play pairs with independent shaping draws and seeds."""
    if n < 1:
        raise ValueError("pool size must be at least 1")
    if workers > 1:
        args = [(env_spec, config, seed, i) for i in range(n)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(_build_pair_star, args))
    else:
        pairs = [_build_pair(env_spec, config, seed, i) for i in range(n)]
    return PartnerPool(pairs, env_spec, {"kind": "selfplay", "master_seed": seed})


def _build_pair_star(args):
    return _build_pair(*args)


def rollout(
    policy_seat1,
    policy_seat2,
    env,
    episodes: int,
    seed: int,
    record_events: bool = False,
) -> tuple[float, list[Trajectory] | None]:
    """Greedy co-play; returns mean sparse return and optional trajectories."""
    if episodes < 1:
        raise ValueError("episodes must be at least 1")
    total = 0.0
    trajectories: list[Trajectory] | None = [] if record_events else None
    for ep in range(episodes):
        state = env.reset(derive_seed(seed, "episode", ep))
        obs1, obs2 = env.observe(state, 1), env.observe(state, 2)
        traj = Trajectory(([obs1], [obs2]), [], [], ([], []))
        done = False
        while not done:
            a1, a2 = policy_seat1.act(obs1), policy_seat2.act(obs2)
            res = env.step(state, a1, a2)
            total += res.reward
            state, done = res.state, res.done
            obs1, obs2 = env.observe(state, 1), env.observe(state, 2)
            if record_events:
                traj.observations[0].append(obs1)
                traj.observations[1].append(obs2)
                traj.actions.append((a1, a2))
                traj.rewards.append(res.reward)
                traj.events[0].append(res.events[0])
                traj.events[1].append(res.events[1])
        if record_events:
            trajectories.append(traj)
    return total / episodes, trajectories


# ---------------------------------------------------------------------------
# Planted signaling pools


def shift_codebook(shift: int) -> dict[int, int]:
    """Cyclic convention: number n signals letter (n-1+shift) mod 4."""
    return {n: (n - 1 + shift) % 4 for n in range(1, 5)}


def swap_codebook(*swapped_pairs: tuple[int, int]) -> dict[int, int]:
    """Identity convention with some number pairs' signals exchanged."""
    book = {n: n - 1 for n in range(1, 5)}
    for a, b in swapped_pairs:
        book[a], book[b] = book[b], book[a]
    return book


def overlapping_family_codebooks(count: int) -> list[dict[int, int]]:
    """Up to four conventions that pairwise share 0-2 number mappings.

    Gradual overlap keeps a static generalist decoder partially effective,
    unlike cyclic families where any mismatch is total.
    """
    books = [
        swap_codebook(),
        swap_codebook((1, 2)),
        swap_codebook((3, 4)),
        swap_codebook((1, 2), (3, 4)),
    ]
    if not 1 <= count <= len(books):
        raise ValueError(f"count must be in 1..{len(books)}")
    return books[:count]


def cyclic_family_codebooks(count: int) -> list[dict[int, int]]:
    """Up to four mutually incompatible conventions (no shared mappings)."""
    if not 1 <= count <= 4:
        raise ValueError("count must be in 1..4")
    return [shift_codebook(s) for s in range(count)]


def planted_pair(codebook: dict[int, int], provenance: dict) -> PolicyPair:
    """Deterministic encoder/decoder pair for one codebook."""
    alice = TabularQ(action_count=5)
    alice.table.update(alice_codebook_table(codebook))
    bob = TabularQ(action_count=5)
    bob.table.update(bob_decoder_table(codebook))
    return PolicyPair(alice, bob, selfplay_return=float("nan"), provenance=provenance)


def planted_signaling_pool(
    codebooks: list[dict[int, int]],
    size: int,
    seed: int,
    return_episodes: int = 4,
) -> PartnerPool:
    """Pool of ``size`` pairs drawn round-robin from convention families.

    Pair i uses codebook i mod len(codebooks); self-play returns are measured
    by greedy rollout so downstream similarity scores rest on the same
    machinery as trained pools.
    """
    env = make_env({"name": "signaling"})
    pairs = []
    for i in range(size):
        family = i % len(codebooks)
        pair = planted_pair(
            codebooks[family],
            {
                "kind": "planted",
                "family": family,
                "codebook": {str(k): v for k, v in codebooks[family].items()},
                "seed": derive_seed(seed, "planted", family, i),
            },
        )
        pair.selfplay_return = greedy_selfplay_return(
            env, pair.policy1, pair.policy2, return_episodes, derive_seed(seed, "self", i)
        )
        pairs.append(pair)
    return PartnerPool(
        pairs,
        {"name": "signaling"},
        {"kind": "planted", "master_seed": seed, "families": len(codebooks)},
    )
