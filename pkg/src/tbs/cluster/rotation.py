"""Rotation-alignment cost and its minimization over Givens angles.

For an n x k spectral embedding X and rotation R, the alignment cost

    J(R) = sum_i sum_j (XR)_ij^2 / max_j (XR)_ij^2

measures how close the rotated rows are to being one-hot: each row
contributes at least 1 (its maximal entry) so J >= n, with equality exactly
when every row has a single nonzero entry. The row maximum is taken over
squared magnitudes, since eigenvector signs are arbitrary.

R is parameterized as a product of k(k-1)/2 plane (Givens) rotations and
minimized by gradient descent on the angles with the analytic gradient,
restarted from several random angle vectors to dodge local minima.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tbs.errors import DegenerateEmbeddingError

ORTHOGONALITY_TOL = 1e-8


def _plane_indices(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k - 1) for j in range(i + 1, k)]


def _givens(k: int, i: int, j: int, theta: float) -> np.ndarray:
    g = np.eye(k)
    c, s = np.cos(theta), np.sin(theta)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s
    g[j, i] = s
    return g


def _givens_derivative(k: int, i: int, j: int, theta: float) -> np.ndarray:
    g = np.zeros((k, k))
    c, s = np.cos(theta), np.sin(theta)
    g[i, i] = -s
    g[j, j] = -s
    g[i, j] = -c
    g[j, i] = c
    return g


def rotation_from_angles(angles: np.ndarray, k: int) -> np.ndarray:
    """Compose the Givens product R = G_1(theta_1) ... G_m(theta_m)."""
    r = np.eye(k)
    for (i, j), theta in zip(_plane_indices(k), angles):
        r = r @ _givens(k, i, j, theta)
    return r


def alignment_cost(embedding: np.ndarray, rotation: np.ndarray) -> float:
    """J(R) for a given orthogonal rotation; raises on degenerate rows."""
    r = np.asarray(rotation, dtype=float)
    k = r.shape[0]
    if r.shape != (k, k):
        raise ValueError(f"rotation must be square, got {r.shape}")
    if np.abs(r.T @ r - np.eye(k)).max() > ORTHOGONALITY_TOL:
        raise ValueError("rotation matrix is not orthogonal within tolerance")
    return _cost_of_rotated(np.asarray(embedding, dtype=float) @ r)


def _cost_of_rotated(z: np.ndarray) -> float:
    squares = z**2
    row_max = squares.max(axis=1)
    if np.any(row_max <= 0.0):
        raise DegenerateEmbeddingError("embedding row with no nonzero entry")
    return float((squares / row_max[:, None]).sum())


def _cost_and_gradient(
    x: np.ndarray, angles: np.ndarray, planes: list[tuple[int, int]], k: int
) -> tuple[float, np.ndarray]:
    """Analytic angle gradient, treating each row's argmax as locally fixed."""
    m = len(planes)
    gs = np.empty((m, k, k))
    for idx, ((i, j), theta) in enumerate(zip(planes, angles)):
        gs[idx] = _givens(k, i, j, theta)

    prefixes = np.empty((m, k, k))
    prefixes[0] = np.eye(k)
    for idx in range(1, m):
        prefixes[idx] = prefixes[idx - 1] @ gs[idx - 1]
    suffixes = np.empty((m, k, k))
    suffixes[m - 1] = np.eye(k)
    for idx in range(m - 2, -1, -1):
        suffixes[idx] = gs[idx + 1] @ suffixes[idx + 1]
    rotation = prefixes[m - 1] @ gs[m - 1]

    z = x @ rotation
    squares = z**2
    row_max_idx = squares.argmax(axis=1)
    rows = np.arange(z.shape[0])
    row_max = squares[rows, row_max_idx]
    if np.any(row_max <= 0.0):
        raise DegenerateEmbeddingError("embedding row with no nonzero entry")
    cost = float((squares / row_max[:, None]).sum())

    # dJ/dZ with the row max index held fixed.
    grad_z = 2.0 * z / row_max[:, None]
    row_sums = squares.sum(axis=1)
    grad_z[rows, row_max_idx] -= 2.0 * z[rows, row_max_idx] * row_sums / row_max**2

    core = x.T @ grad_z  # dJ/dR
    # d(idx) = prefix^T core suffix^T, batched over angles.
    d = np.matmul(np.matmul(prefixes.transpose(0, 2, 1), core), suffixes.transpose(0, 2, 1))
    cos = np.cos(angles)
    sin = np.sin(angles)
    plane_i = np.array([p[0] for p in planes])
    plane_j = np.array([p[1] for p in planes])
    arange_m = np.arange(m)
    gradient = (
        -sin * d[arange_m, plane_i, plane_i]
        - sin * d[arange_m, plane_j, plane_j]
        - cos * d[arange_m, plane_i, plane_j]
        + cos * d[arange_m, plane_j, plane_i]
    )
    return cost, gradient


def angle_gradient(embedding: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Analytic gradient of J with respect to the Givens angles."""
    x = np.asarray(embedding, dtype=float)
    k = x.shape[1]
    _, grad = _cost_and_gradient(x, np.asarray(angles, dtype=float), _plane_indices(k), k)
    return grad


@dataclass
class RotationResult:
    rotation: np.ndarray
    cost: float
    converged: bool


def minimize_rotation(
    embedding: np.ndarray,
    learning_rate: float = 0.05,
    iterations: int = 500,
    restarts: int = 8,
    seed: int = 0,
    gradient_tol: float = 1e-10,
) -> RotationResult:
    """Minimize J over rotations by multi-start gradient descent on angles."""
    x = np.asarray(embedding, dtype=float)
    n, k = x.shape
    if k < 2:
        # A 1-d embedding admits no rotation; the cost is n by definition.
        return RotationResult(np.eye(max(k, 1)), float(n), True)

    planes = _plane_indices(k)
    m = len(planes)
    rng = np.random.default_rng(seed)
    best_cost = np.inf
    best_angles = np.zeros(m)
    best_converged = False

    for restart in range(restarts):
        if restart == 0:
            angles = np.zeros(m)
        else:
            angles = rng.uniform(-np.pi / 2, np.pi / 2, size=m)
        run_best_cost, run_best_angles = np.inf, angles.copy()
        converged = False
        stall = 0
        for _ in range(iterations):
            cost, grad = _cost_and_gradient(x, angles, planes, k)
            if cost < run_best_cost - 1e-13 * (1.0 + run_best_cost):
                run_best_cost, run_best_angles = cost, angles.copy()
                stall = 0
            else:
                stall += 1
            if np.abs(grad).max() < gradient_tol:
                converged = True
                break
            if stall >= 30:  # cost plateaued; extra iterations buy nothing
                converged = True
                break
            angles = angles - learning_rate * grad
        final_cost, _ = _cost_and_gradient(x, angles, planes, k)
        if final_cost < run_best_cost:
            run_best_cost, run_best_angles = final_cost, angles.copy()
        if run_best_cost < best_cost:
            best_cost = run_best_cost
            best_angles = run_best_angles
            best_converged = converged

    return RotationResult(rotation_from_angles(best_angles, k), best_cost, best_converged)
