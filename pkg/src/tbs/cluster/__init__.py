"""Cross-play similarity and self-tuning spectral clustering."""

from tbs.cluster.matrices import (
    CrossPlayMatrix,
    SimilarityMatrix,
    crossplay_matrix,
    similarity_matrix,
    SIMILARITY_EPSILON,
)
from tbs.cluster.spectral import laplacian, top_eigenvectors
from tbs.cluster.rotation import alignment_cost, minimize_rotation, RotationResult
from tbs.cluster.selection import ClusterAssignment, select_k

__all__ = [
    "CrossPlayMatrix",
    "SimilarityMatrix",
    "crossplay_matrix",
    "similarity_matrix",
    "SIMILARITY_EPSILON",
    "laplacian",
    "top_eigenvectors",
    "alignment_cost",
    "minimize_rotation",
    "RotationResult",
    "ClusterAssignment",
    "select_k",
]
