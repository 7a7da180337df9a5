"""Graph Laplacian embedding for similarity matrices.

Uses the symmetric normalized operator L = D^{-1/2} S D^{-1/2}; block
structure in S shows up in the eigenvectors of the *largest* eigenvalues,
which is the "top k" convention used throughout the clustering stack.
"""

from __future__ import annotations

import numpy as np


def laplacian(similarity: np.ndarray) -> np.ndarray:
    """Degree-normalized similarity operator D^{-1/2} S D^{-1/2}."""
    s = np.asarray(similarity, dtype=float)
    if s.shape[0] != s.shape[1]:
        raise ValueError(f"similarity matrix must be square, got {s.shape}")
    if not np.allclose(s, s.T, atol=1e-12):
        raise ValueError("similarity matrix must be symmetric")
    if np.any(s <= 0):
        raise ValueError("similarity entries must be positive (epsilon floor missing?)")
    degrees = s.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    return s * np.outer(inv_sqrt, inv_sqrt)


def top_eigenvectors(operator: np.ndarray, k: int) -> np.ndarray:
    """Eigenvectors of the k largest eigenvalues, as columns, largest first."""
    n = operator.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    _, vectors = np.linalg.eigh(operator)
    return vectors[:, -1 : -(k + 1) : -1]
