"""Spectral graph cut: unnormalized Laplacian, smallest eigenvectors, k-means.

The Laplacian is L = D - W with integer arithmetic, so row sums are exactly
zero.  Eigenrows are fed to k-means without row normalization (that variant
belongs to normalized cuts); ``row_normalize`` exists as an explicit switch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

_SYMMETRY_TOL = 1e-10
_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class ClusterAssignment:
    labels: tuple[int, ...]
    k: int

    def members(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.k)]
        for i, c in enumerate(self.labels):
            groups[c].append(i)
        return groups


def laplacian(g) -> np.ndarray:
    adj = np.asarray(g.adjacency)
    degrees = adj.sum(axis=1)
    lap = np.diag(degrees) - adj
    return lap.astype(float)


def smallest_eigenvectors(L: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of the k smallest eigenvalues of a symmetric matrix.

    Returns (U, eigenvalues) with U of shape (n, k), eigenvalues ascending,
    columns unit-norm.  Residuals are checked against 1e-8 * ||L||.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if L.shape != (n, n):
        raise ValueError("matrix must be square")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    asym = np.abs(L - L.T).max() if n else 0.0
    if asym > _SYMMETRY_TOL:
        raise ValueError(f"matrix asymmetry {asym:.3e} exceeds {_SYMMETRY_TOL}")
    eigenvalues, vectors = np.linalg.eigh(L)
    U = vectors[:, :k]
    vals = eigenvalues[:k]
    scale = np.linalg.norm(L)
    limit = _RESIDUAL_TOL * (scale if scale > 0 else 1.0)
    residual = np.linalg.norm(L @ U - U * vals, axis=0).max() if k else 0.0
    if residual > limit:
        raise ArithmeticError(
            f"eigen residual {residual:.3e} exceeds {limit:.3e}")
    return U, vals


def _kmeanspp_seed(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    centroids = np.empty((k, points.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = points[first]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centroids[c] = points[idx]
        d2 = np.minimum(d2, ((points - points[idx]) ** 2).sum(axis=1))
    return centroids


def _lloyd(points: np.ndarray, centroids: np.ndarray, k: int,
           max_iter: int) -> tuple[np.ndarray, float]:
    n = len(points)
    labels = np.full(n, -1)
    for _ in range(max_iter):
        d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        for c in range(k):
            if not (new_labels == c).any():
                # re-seed an emptied centroid at the worst-fit point
                far = int(d2[np.arange(n), new_labels].argmax())
                centroids[c] = points[far]
                new_labels[far] = c
        if (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(k):
            centroids[c] = points[labels == c].mean(axis=0)
    objective = float(((points - centroids[labels]) ** 2).sum())
    return labels, objective


def kmeans(points: np.ndarray, k: int, seed: int, restarts: int = 10,
           max_iter: int = 300) -> ClusterAssignment:
    """Lloyd iterations with k-means++ seeding; best of ``restarts`` runs."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n = len(points)
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < k:
        log.warning("k=%d exceeds %d points; reducing", k, n)
        k = n
    best_labels, best_obj = None, None
    for restart in range(restarts):
        rng = np.random.default_rng([seed & 0x7FFFFFFF, restart])
        centroids = _kmeanspp_seed(points, k, rng)
        labels, obj = _lloyd(points, centroids.copy(), k, max_iter)
        if best_obj is None or obj < best_obj:
            best_labels, best_obj = labels, obj
    return ClusterAssignment(labels=tuple(int(c) for c in best_labels), k=k)


def spectral_clusters(g, k: int, seed: int,
                      row_normalize: bool = False) -> ClusterAssignment:
    """Cut the sentence graph into k clusters via its Laplacian eigenrows."""
    n = g.n
    if n == 0:
        return ClusterAssignment(labels=(), k=0)
    k = max(1, min(k, n))
    if n == 1 or k == 1:
        return ClusterAssignment(labels=(0,) * n, k=1)
    U, _vals = smallest_eigenvectors(laplacian(g), k)
    if row_normalize:
        norms = np.linalg.norm(U, axis=1)
        norms[norms == 0] = 1.0
        U = U / norms[:, None]
    return kmeans(U, k, seed)
