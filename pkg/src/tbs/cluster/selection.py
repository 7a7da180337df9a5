"""Automatic cluster-count selection by minimal rotation-alignment cost."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from tbs.cluster.matrices import SimilarityMatrix
from tbs.cluster.rotation import minimize_rotation
from tbs.cluster.spectral import laplacian, top_eigenvectors
from tbs.seeding import derive_seed

log = logging.getLogger(__name__)


@dataclass
class ClusterAssignment:
    k: int
    labels: np.ndarray  # length n, values in [0, k)
    cost_curve: dict[int, float]
    rotation: np.ndarray

    def members(self, cluster: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.labels == cluster)]

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "labels": [int(x) for x in self.labels],
                "cost_curve": {str(k): v for k, v in sorted(self.cost_curve.items())},
                "rotation": self.rotation.tolist(),
            },
            indent=2,
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "ClusterAssignment":
        data = json.loads(text)
        return ClusterAssignment(
            int(data["k"]),
            np.asarray(data["labels"], dtype=int),
            {int(k): float(v) for k, v in data["cost_curve"].items()},
            np.asarray(data["rotation"], dtype=float),
        )


def _labels_for(embedding: np.ndarray, rotation: np.ndarray) -> np.ndarray:
    rotated = embedding @ rotation
    return (rotated**2).argmax(axis=1)


def _valid_assignment(embedding: np.ndarray, rotation: np.ndarray, labels: np.ndarray, k: int) -> bool:
    """Every class nonempty and sign-consistent in its max column.

    Squared magnitudes cannot distinguish antipodal rows, so a rotation can
    fold two well-separated clusters into one column with opposite signs and
    undercut the true k's cost. Such a class is two clusters, not one; treat
    it like an empty class and let selection fall back to the next-best k.
    """
    if len(np.unique(labels)) != k:
        return False
    rotated = embedding @ rotation
    peak = rotated[np.arange(len(labels)), (rotated**2).argmax(axis=1)]
    for cluster in range(k):
        entries = peak[labels == cluster]
        positive = entries[entries > 0].sum()
        negative = -entries[entries < 0].sum()
        if min(positive, negative) > 0.1 * max(positive, negative):
            return False
    return True


def default_k_range(n: int) -> tuple[int, int]:
    """Default search range [2, min(8, n-1)]; degenerates to k=1 for n < 3."""
    if n < 3:
        return 1, 1
    return 2, min(8, n - 1)


def select_k(
    similarity: SimilarityMatrix,
    k_min: int | None = None,
    k_max: int | None = None,
    seed: int = 0,
    learning_rate: float = 0.05,
    iterations: int = 500,
    restarts: int = 8,
) -> ClusterAssignment:
    """Cluster by picking the k with the lowest minimized alignment cost.

    Ties in cost go to the smallest k. If the best k's argmax labels leave a
    cluster empty, the next-best k is used instead; a fully degenerate curve
    collapses to a single cluster.
    """
    s = similarity.values
    n = s.shape[0]
    lo, hi = default_k_range(n)
    k_min = lo if k_min is None else k_min
    k_max = hi if k_max is None else k_max
    if not 1 <= k_min <= k_max <= n:
        raise ValueError(f"need 1 <= k_min <= k_max <= {n}, got [{k_min}, {k_max}]")

    operator = laplacian(s)
    candidates: dict[int, tuple[float, np.ndarray, np.ndarray]] = {}
    cost_curve: dict[int, float] = {}
    for k in range(k_min, k_max + 1):
        embedding = top_eigenvectors(operator, k)
        if k == 1:
            cost, rotation = float(n), np.eye(1)
        else:
            result = minimize_rotation(
                embedding,
                learning_rate=learning_rate,
                iterations=iterations,
                restarts=restarts,
                seed=derive_seed(seed, "rotation", k),
            )
            cost, rotation = result.cost, result.rotation
        cost_curve[k] = cost
        candidates[k] = (cost, rotation, embedding)

    # Lowest cost wins; ties break toward smaller k (sort is stable over
    # ascending k).
    ordering = sorted(candidates, key=lambda k: (candidates[k][0], k))
    for k in ordering:
        _, rotation, embedding = candidates[k]
        if k == 1:
            return ClusterAssignment(1, np.zeros(n, dtype=int), cost_curve, rotation)
        labels = _labels_for(embedding, rotation)
        if _valid_assignment(embedding, rotation, labels, k):
            return ClusterAssignment(k, labels, cost_curve, rotation)
        log.info("k=%d assignment degenerate (empty or sign-folded class); trying next-best k", k)

    log.warning("all candidate k left empty clusters; collapsing to one cluster")
    return ClusterAssignment(1, np.zeros(n, dtype=int), cost_curve, np.eye(1))
