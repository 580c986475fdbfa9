"""Eigen-analysis baseline estimator and varimax post-rotation."""

from __future__ import annotations

import time

import numpy as np

from .errors import BadDimsError, RankDeficientError
from .linalg import DEFAULT_REL_FLOOR, sym_eig
from .model import FitResult, LoadingPair, validate_panel

__all__ = ["alpha_pca_fit", "varimax_rotate", "varimax_criterion"]


def alpha_pca_fit(panel, k1: int, k2: int) -> FitResult:
    """Single-pass eigen-analysis fit of the loading pair.

    The row loading is ``sqrt(p1)`` times the top ``k1`` eigenvectors of the
    averaged row covariance ``sum_t X_t X_t' / (T p1 p2)``; the column side
    mirrors it.  Factors are the double projection of the observations onto
    the fitted loadings.  Raises :class:`RankDeficientError` when the k-th
    eigenvalue is not strictly above the relative floor.
    """
    panel = validate_panel(panel)
    t_len, p1, p2 = panel.shape
    if not (1 <= k1 <= p1 and 1 <= k2 <= p2):
        raise BadDimsError(f"need 1 <= k <= p, got k=({k1},{k2}), p=({p1},{p2})")
    start = time.perf_counter()
    scale = t_len * p1 * p2
    m_row = np.sum(panel @ panel.transpose(0, 2, 1), axis=0) / scale
    m_col = np.sum(panel.transpose(0, 2, 1) @ panel, axis=0) / scale

    loadings = []
    for mat, k, p in ((m_row, k1, p1), (m_col, k2, p2)):
        values, vectors = sym_eig(mat)
        if values[k - 1] <= DEFAULT_REL_FLOOR * values[0]:
            raise RankDeficientError(
                f"eigenvalue {k} is not above the floor; panel rank too low"
            )
        loadings.append(np.sqrt(p) * vectors[:, :k])
    r_hat, c_hat = loadings
    factors = (r_hat.T @ panel @ c_hat) / (p1 * p2)
    return FitResult(
        loadings=LoadingPair(r_hat, c_hat),
        factors=factors,
        iterations=0,
        converged=False,
        delta_trace=(),
        elapsed=time.perf_counter() - start,
    )


def varimax_criterion(a) -> float:
    """Sum over columns of the variance of squared loadings."""
    sq = np.asarray(a, dtype=np.float64) ** 2
    return float(np.sum(np.mean(sq**2, axis=0) - np.mean(sq, axis=0) ** 2))


def varimax_rotate(loading, max_sweeps: int = 100, tol: float = 1e-12) -> np.ndarray:
    """Orthogonally rotate ``loading`` to maximize the varimax criterion.

    Classical pairwise-rotation sweeps: every column pair is rotated by its
    closed-form optimal angle, which never decreases the criterion, until a
    full sweep moves no pair by more than ``tol`` radians or ``max_sweeps``
    is reached.  The result equals ``loading @ Q`` for an orthogonal ``Q``,
    so the column span is unchanged.
    """
    a = np.array(loading, dtype=np.float64, copy=True)
    if a.ndim != 2:
        raise BadDimsError(f"loading must be 2-d, got shape {a.shape}")
    n, k = a.shape
    if k < 2:
        return a
    for _ in range(max_sweeps):
        largest = 0.0
        for p in range(k - 1):
            for q in range(p + 1, k):
                x = a[:, p]
                y = a[:, q]
                u = x * x - y * y
                v = 2.0 * x * y
                su, sv = u.sum(), v.sum()
                num = 2.0 * (u @ v) - 2.0 * su * sv / n
                den = (u @ u) - (v @ v) - (su * su - sv * sv) / n
                angle = 0.25 * np.arctan2(num, den)
                if abs(angle) <= tol:
                    continue
                cos, sin = np.cos(angle), np.sin(angle)
                a[:, p], a[:, q] = x * cos + y * sin, y * cos - x * sin
                largest = max(largest, abs(angle))
        if largest <= tol:
            break
    return a
