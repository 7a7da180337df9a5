"""Cross-play returns and the similarity scores derived from them.

Two pairs are similar to the extent that their mixed seatings keep earning
the returns the pairs earn at home:

    s(A, B) = (J(A1, B2) + J(B1, A2)) / (J(A1, A2) + J(B1, B2))

Raw scores are clamped to [0, 1] (cross-play occasionally beats self-play),
a 0/0 score is defined as 1 (both pairs failed, which is its own kind of
agreement), and a small epsilon is added everywhere to keep the matrix away
from singularity during spectral clustering.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from tbs.envs.base import make_env
from tbs.pool import PartnerPool, rollout
from tbs.seeding import derive_seed

log = logging.getLogger(__name__)

SIMILARITY_EPSILON = 1e-4


@dataclass
class CrossPlayMatrix:
    """X[a, b] = mean greedy return of pair a's seat 1 with pair b's seat 2."""

    values: np.ndarray
    episode_count: int
    seed: int

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def to_csv(self) -> str:
        return _matrix_csv(self.values)

    @staticmethod
    def from_csv(text: str, episode_count: int = 0, seed: int = 0) -> "CrossPlayMatrix":
        return CrossPlayMatrix(_parse_matrix_csv(text), episode_count, seed)


@dataclass
class SimilarityMatrix:
    values: np.ndarray
    epsilon: float = SIMILARITY_EPSILON

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def to_csv(self) -> str:
        return _matrix_csv(self.values)


def _matrix_csv(values: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    n = values.shape[0]
    writer.writerow([""] + [str(i) for i in range(n)])
    for i in range(n):
        writer.writerow([str(i)] + [repr(float(v)) for v in values[i]])
    return buf.getvalue()


def _parse_matrix_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    data = [[float(v) for v in row[1:]] for row in rows[1:]]
    return np.asarray(data, dtype=float)


def _crossplay_cell(env_spec, pair_a, pair_b, episodes, seed):
    env = make_env(env_spec)
    mean_return, _ = rollout(pair_a.policy1, pair_b.policy2, env, episodes, seed)
    return mean_return


def _row_task(args):
    env_spec, row_pair, col_pairs, episodes, seed, row_idx = args
    env = make_env(env_spec)
    out = np.empty(len(col_pairs))
    for j, col_pair in enumerate(col_pairs):
        mean_return, _ = rollout(
            row_pair.policy1,
            col_pair.policy2,
            env,
            episodes,
            derive_seed(seed, "xp", row_idx, j),
        )
        out[j] = mean_return
    return out


def crossplay_matrix(
    pool: PartnerPool, episodes: int, seed: int, workers: int = 1
) -> CrossPlayMatrix:
    """Evaluate all n^2 seatings of the pool by greedy rollout."""
    if len(pool) == 0:
        raise ValueError("pool must be non-empty")
    n = len(pool)
    args = [(pool.env_spec, pool.pairs[i], pool.pairs, episodes, seed, i) for i in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_row_task, args))
    else:
        rows = [_row_task(a) for a in args]
    return CrossPlayMatrix(np.vstack(rows), episodes, seed)


def similarity_matrix(xp: CrossPlayMatrix) -> SimilarityMatrix:
    """Symmetrized, clamped cross-play similarity with epsilon floor."""
    x = xp.values
    if x.shape[0] != x.shape[1]:
        raise ValueError(f"cross-play matrix must be square, got {x.shape}")
    n = x.shape[0]
    out = np.empty((n, n))
    warned = False
    for i in range(n):
        for j in range(i, n):
            numerator = x[i, j] + x[j, i]
            denominator = x[i, i] + x[j, j]
            if numerator == 0.0 and denominator == 0.0:
                raw = 1.0  # both pairs failed outright; call that agreement
            elif denominator == 0.0:
                raw = np.inf if numerator > 0 else -np.inf
            else:
                raw = numerator / denominator
            if (numerator < 0 or denominator < 0) and not warned:
                log.warning(
                    "negative return in similarity ratio at (%d, %d); clamping", i, j
                )
                warned = True
            value = min(1.0, max(0.0, raw)) + SIMILARITY_EPSILON
            out[i, j] = value
            out[j, i] = value
    return SimilarityMatrix(out)
