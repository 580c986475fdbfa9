"""Core domain types shared by estimators, simulators and metrics.

Observation panels and factor paths are plain float64 ndarrays of shape
``(T, p1, p2)`` and ``(T, m1, m2)``; the structured results below are frozen
dataclasses and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatchError, NonFiniteError


@dataclass(frozen=True)
class LoadingPair:
    """Row loading ``r`` (p1 x k1) and column loading ``c`` (p2 x k2)."""

    r: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class ProjectionPair:
    """Projection weights with their diversified-weight diagnostics.

    ``max_abs`` and ``min_gram_eig`` record, per side, the largest absolute
    entry and the smallest eigenvalue of ``W'W/p``; a usable pair has both
    diagnostics finite and ``min_gram_eig > 0``.
    """

    w1: np.ndarray
    w2: np.ndarray
    max_abs: tuple[float, float]
    min_gram_eig: tuple[float, float]


@dataclass(frozen=True)
class FitResult:
    """Output of a loading/factor fit.

    ``delta_trace`` holds one common-component delta per iteration; when
    ``converged`` is true its last entry is at or below the configured
    threshold.  Single-pass estimators report ``iterations=0`` and an empty
    trace.
    """

    loadings: LoadingPair
    factors: np.ndarray
    iterations: int
    converged: bool
    delta_trace: tuple[float, ...]
    elapsed: float


@dataclass(frozen=True)
class SimulationTruth:
    """Ground truth retained alongside a simulated panel.

    ``loadings`` and ``factors`` are the raw draws (no scale normalization).
    ``h1``/``h2`` are the affine transforms induced by a downstream weight
    choice; they are filled by callers via :func:`with_transforms`.
    """

    loadings: LoadingPair
    factors: np.ndarray
    noise: np.ndarray
    h1: np.ndarray | None = None
    h2: np.ndarray | None = None


def validate_panel(panel) -> np.ndarray:
    """Validate and canonicalize a panel of T observation matrices.

    Accepts a ``(T, p1, p2)`` array or a sequence of 2-d slices; returns the
    float64 array form.  Raises :class:`DimMismatchError` on ragged or
    mis-shaped input and :class:`NonFiniteError` (with the offending
    ``(t, i, j)``) on NaN/Inf entries.
    """
    if isinstance(panel, np.ndarray):
        arr = panel.astype(np.float64, copy=False)
        if arr.ndim != 3:
            raise DimMismatchError(f"panel must be 3-d (T, p1, p2), got {arr.shape}")
    else:
        slices = [np.asarray(s, dtype=np.float64) for s in panel]
        if not slices:
            raise DimMismatchError("panel must contain at least one slice")
        shape = slices[0].shape
        if len(shape) != 2:
            raise DimMismatchError(f"slice 0 must be 2-d, got shape {shape}")
        for t, s in enumerate(slices):
            if s.shape != shape:
                raise DimMismatchError(
                    f"slice {t} has shape {s.shape}, expected {shape}"
                )
        arr = np.stack(slices)
    if arr.shape[0] < 1:
        raise DimMismatchError("panel must contain at least one slice")
    if not np.all(np.isfinite(arr)):
        t, i, j = (int(x) for x in np.argwhere(~np.isfinite(arr))[0])
        raise NonFiniteError(
            f"non-finite entry at (t={t}, i={i}, j={j})", where=(t, i, j)
        )
    return arr


def loading_scale_residuals(loadings: LoadingPair) -> tuple[float, float]:
    """Frobenius residuals of the ``R'R/p1 = I`` and ``C'C/p2 = I`` scale rules."""
    r, c = loadings.r, loadings.c
    res_r = np.linalg.norm(r.T @ r / r.shape[0] - np.eye(r.shape[1]))
    res_c = np.linalg.norm(c.T @ c / c.shape[0] - np.eye(c.shape[1]))
    return float(res_r), float(res_c)
