"""Factor estimation by two-directional projection and its subspace diagnostics."""

from __future__ import annotations

import dataclasses

import numpy as np

from .errors import DimMismatchError, RankDeficientError
from .linalg import kron, psd_pinv, spectral_norm
from .model import ProjectionPair, SimulationTruth

__all__ = [
    "estimate_factors",
    "factor_space_errors",
    "stack_vec_rows",
    "with_transforms",
]


def estimate_factors(panel: np.ndarray, w: ProjectionPair) -> np.ndarray:
    """Project each observation from both sides: ``W1' X_t W2 / (p1 p2)``.

    Returns the ``(T, m1, m2)`` factor path.  The estimate recovers the true
    factors up to the affine transforms ``H1 = W1'R/p1`` and ``H2 = W2'C/p2``
    plus a projected-noise term that averages out as dimensions grow.
    """
    t_len, p1, p2 = panel.shape
    if w.w1.shape[0] != p1 or w.w2.shape[0] != p2:
        raise DimMismatchError(
            f"weights {w.w1.shape}/{w.w2.shape} do not match panel ({p1}, {p2})"
        )
    return (w.w1.T @ panel @ w.w2) / (p1 * p2)


def with_transforms(truth: SimulationTruth, w: ProjectionPair) -> SimulationTruth:
    """Fill ``h1 = W1'R/p1`` and ``h2 = W2'C/p2`` for the weights in use."""
    h1 = w.w1.T @ truth.loadings.r / w.w1.shape[0]
    h2 = w.w2.T @ truth.loadings.c / w.w2.shape[0]
    return dataclasses.replace(truth, h1=h1, h2=h2)


def stack_vec_rows(fpath: np.ndarray) -> np.ndarray:
    """Stack column-major vectorized slices as rows: ``(T, m1*m2)``."""
    t_len = fpath.shape[0]
    return fpath.transpose(0, 2, 1).reshape(t_len, -1)


def _numerical_rank(a: np.ndarray) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > max(a.shape) * np.finfo(np.float64).eps * s[0]))


def _projector(a: np.ndarray) -> np.ndarray:
    return a @ psd_pinv(a.T @ a) @ a.T


def factor_space_errors(
    fhat: np.ndarray,
    truth: np.ndarray,
    h1: np.ndarray,
    h2: np.ndarray,
) -> dict:
    """Subspace-consistency diagnostics of a projected factor path.

    ``per_t_transform_error`` is ``max_t ||M1' Fhat_t M2 - F_t||_2`` with
    ``M_i = (H_i H_i')^+ H_i``; it vanishes on noiseless data whenever the
    working dimensions cover the true ranks.  ``projector_error`` and
    ``projector_error_M`` compare the spans of the stacked vectorized paths:
    ``||P_fhat P_f - P_f||_2`` and ``||P_(fhat M) - P_f||_2`` with
    ``M = (H H')^+ H``, ``H = H2 (x) H1``.  When the working dimensions equal
    the true ranks the two projector errors coincide.

    Raises :class:`RankDeficientError` when ``H1`` or ``H2`` loses rank, i.e.
    when the weights are (numerically) orthogonal to a loading direction.
    """
    if fhat.shape[0] != truth.shape[0]:
        raise DimMismatchError(
            f"paths disagree in length: {fhat.shape[0]} vs {truth.shape[0]}"
        )
    m1, m2 = fhat.shape[1], fhat.shape[2]
    k1, k2 = truth.shape[1], truth.shape[2]
    if h1.shape != (m1, k1) or h2.shape != (m2, k2):
        raise DimMismatchError(
            f"transforms {h1.shape}/{h2.shape} do not match paths "
            f"({m1},{k1})/({m2},{k2})"
        )
    for name, h, k in (("h1", h1, k1), ("h2", h2, k2)):
        if _numerical_rank(h) < k:
            raise RankDeficientError(f"{name} has rank below {k}")

    m1_map = psd_pinv(h1 @ h1.T) @ h1
    m2_map = psd_pinv(h2 @ h2.T) @ h2
    aligned = m1_map.T @ fhat @ m2_map
    per_t = max(spectral_norm(aligned[t] - truth[t]) for t in range(truth.shape[0]))

    fh = stack_vec_rows(fhat)
    f = stack_vec_rows(truth)
    p_fh = _projector(fh)
    p_f = _projector(f)
    projector_error = spectral_norm(p_fh @ p_f - p_f)

    h = kron(h2, h1)
    m_map = psd_pinv(h @ h.T) @ h
    p_fh_m = _projector(fh @ m_map)
    projector_error_m = spectral_norm(p_fh_m - p_f)

    sv1 = np.linalg.svd(h1, compute_uv=False)
    sv2 = np.linalg.svd(h2, compute_uv=False)
    return {
        "per_t_transform_error": float(per_t),
        "projector_error": float(projector_error),
        "projector_error_M": float(projector_error_m),
        "nu_min": (float(sv1[k1 - 1]), float(sv2[k2 - 1])),
    }
