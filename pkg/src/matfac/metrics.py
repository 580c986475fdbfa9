"""Evaluation statistics: subspace distances and rolling-window summaries."""

from __future__ import annotations

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    DimMismatchError,
    EmptyInputError,
)
from .linalg import gram_schmidt, kron
from .model import LoadingPair
from .projection import stack_vec_rows

__all__ = [
    "space_distance",
    "vec_factor_distance",
    "replication_summary",
    "rolling_stats",
    "loading_variation",
]


def space_distance(q1, q2) -> float:
    """Distance between the column spaces of two full-column-rank matrices.

    Both inputs are orthonormalized first, then

        D = sqrt(1 - tr(Q1 Q1' Q2 Q2') / max(q1, q2)),

    which is 0 for equal spans and 1 for orthogonal spans, is symmetric, and
    is invariant to right-multiplication by any invertible matrix.  The value
    under the root is clamped to [0, 1] against roundoff.
    """
    q1 = np.atleast_2d(np.asarray(q1, dtype=np.float64))
    q2 = np.atleast_2d(np.asarray(q2, dtype=np.float64))
    if q1.shape[0] != q2.shape[0]:
        raise DimMismatchError(
            f"row counts differ: {q1.shape[0]} vs {q2.shape[0]}"
        )
    b1 = gram_schmidt(q1)
    b2 = gram_schmidt(q2)
    overlap = float(np.sum((b1.T @ b2) ** 2))
    val = 1.0 - overlap / max(b1.shape[1], b2.shape[1])
    return float(np.sqrt(min(max(val, 0.0), 1.0)))


def vec_factor_distance(fhat: np.ndarray, truth: np.ndarray) -> float:
    """Span distance between two factor paths, viewed as T-vector families.

    Each path is stacked into a ``(T, m1*m2)`` matrix of vectorized slices;
    the columns (one time series per factor entry) span the compared spaces.
    Exact recovery up to any fixed invertible mixing of the vectorized
    entries therefore scores 0.
    """
    if fhat.shape[0] != truth.shape[0]:
        raise DimMismatchError(
            f"paths disagree in length: {fhat.shape[0]} vs {truth.shape[0]}"
        )
    return space_distance(stack_vec_rows(fhat), stack_vec_rows(truth))


def replication_summary(values) -> tuple[float, float]:
    """Mean and sample standard deviation (n-1 denominator; 0 for n=1)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInputError("no values to summarize")
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return mean, sd


def rolling_stats(observed: np.ndarray, fitted: np.ndarray) -> tuple[float, float]:
    """Per-window fit quality: mean squared error and unexplained share.

    ``mse`` averages the squared reconstruction error over all entries of
    the window; ``rho`` divides the total squared error by the total squared
    deviation of the observed slices from their entrywise mean slice.
    """
    if observed.shape != fitted.shape:
        raise DimMismatchError(
            f"shapes differ: {observed.shape} vs {fitted.shape}"
        )
    if observed.ndim != 3 or observed.shape[0] < 1:
        raise DimMismatchError("expected a non-empty (n, p1, p2) window")
    err = float(np.sum((fitted - observed) ** 2))
    mse = err / observed.size
    center = observed.mean(axis=0)
    denom = float(np.sum((observed - center) ** 2))
    if denom == 0.0:
        raise DegenerateDenominatorError("observed window is constant")
    return mse, err / denom


def loading_variation(curr: LoadingPair, prev: LoadingPair) -> float:
    """Span distance between consecutive joint loading spaces.

    Forms the Kronecker products ``C (x) R`` of both pairs and measures
    :func:`space_distance` between them.
    """
    if curr.r.shape != prev.r.shape or curr.c.shape != prev.c.shape:
        raise DimMismatchError("loading pairs disagree in shape across windows")
    return space_distance(kron(curr.c, curr.r), kron(prev.c, prev.r))
