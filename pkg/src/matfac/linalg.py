"""Dense linear-algebra kernels used by every estimator.

All routines operate on float64 ndarrays, re-validate finiteness on entry and
apply a deterministic eigenvector sign convention so repeated calls on
identical input are bit-identical.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BadConfigError,
    NonFiniteError,
    NonSquareError,
    NonSymmetricError,
    RankDeficientError,
)

DEFAULT_REL_FLOOR = 1e-12
_ASYMMETRY_RTOL = 1e-8


def _as_finite_array(a, name="matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        where = tuple(int(i) for i in np.argwhere(~np.isfinite(a))[0])
        raise NonFiniteError(f"{name} has a non-finite entry at {where}", where=where)
    return a


def _symmetrize(a: np.ndarray, name="matrix") -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"{name} must be square, got shape {a.shape}")
    scale = np.abs(a).max()
    if scale > 0 and np.abs(a - a.T).max() > _ASYMMETRY_RTOL * scale:
        raise NonSymmetricError(
            f"{name} deviates from symmetry beyond {_ASYMMETRY_RTOL:g} relative"
        )
    return (a + a.T) / 2.0


def sym_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns ``(values, vectors)`` with eigenvalues sorted descending (stable
    order on ties) and each eigenvector's largest-magnitude component made
    positive, ties broken by lowest index.  The input is symmetrized as
    ``(A + A')/2`` before factoring; asymmetry beyond 1e-8 relative raises.
    """
    a = _as_finite_array(a)
    s = _symmetrize(a)
    values, vectors = np.linalg.eigh(s)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for j in range(vectors.shape[1]):
        pivot = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[pivot, j] < 0:
            vectors[:, j] = -vectors[:, j]
    return values, vectors


def spd_sqrt(a) -> np.ndarray:
    """Symmetric square root of an SPD matrix."""
    values, vectors = sym_eig(a)
    if values[0] <= 0 or values[-1] <= 0:
        raise RankDeficientError(
            "matrix is not positive definite",
            floored=int(np.sum(values <= 0)),
        )
    return (vectors * np.sqrt(values)) @ vectors.T


def spd_inv_sqrt(a, rel_floor: float = DEFAULT_REL_FLOOR) -> np.ndarray:
    """Inverse symmetric square root of an SPD matrix.

    Eigenvalues at or below ``rel_floor * lambda_max`` raise
    :class:`RankDeficientError` rather than being silently pseudo-inverted:
    rank deficiency here means the requested working dimension exceeds what
    the data supports.

    Parameters
    ----------
    a : array_like
        Symmetric positive definite matrix.
    rel_floor : float
        Relative eigenvalue floor, must lie in (0, 1).
    """
    if not (0.0 < rel_floor < 1.0):
        raise BadConfigError(f"rel_floor must be in (0, 1), got {rel_floor}")
    values, vectors = sym_eig(a)
    lam_max = values[0]
    floor = rel_floor * lam_max
    floored = int(np.sum(values <= floor)) if lam_max > 0 else values.size
    if floored > 0:
        raise RankDeficientError(
            f"{floored} eigenvalue(s) at or below the relative floor {rel_floor:g}",
            floored=floored,
        )
    return (vectors / np.sqrt(values)) @ vectors.T


def psd_pinv(a, rel_floor: float = DEFAULT_REL_FLOOR) -> np.ndarray:
    """Pseudo-inverse of a symmetric PSD matrix, zeroing floored eigenvalues.

    Unlike :func:`spd_inv_sqrt` this never raises on rank deficiency; it is
    meant for Moore-Penrose inverses of matrices that are rank deficient by
    design (e.g. over-estimated working dimensions).
    """
    values, vectors = sym_eig(a)
    lam_max = max(values[0], 0.0)
    keep = values > rel_floor * lam_max if lam_max > 0 else np.zeros_like(values, bool)
    inv = np.where(keep, 1.0 / np.where(keep, values, 1.0), 0.0)
    return (vectors * inv) @ vectors.T


def gram_schmidt(m) -> np.ndarray:
    """Column-orthonormalize ``m`` preserving span.

    Modified Gram-Schmidt with one reorthogonalization pass.  Raises
    :class:`RankDeficientError` when a column's norm after projection falls
    below ``1e-12`` times its initial norm.
    """
    m = _as_finite_array(m)
    if m.ndim == 1:
        m = m[:, None]
    rows, cols = m.shape
    if cols > rows:
        raise RankDeficientError(f"more columns ({cols}) than rows ({rows})")
    q = m.astype(np.float64, copy=True)
    initial = np.linalg.norm(m, axis=0)
    for j in range(cols):
        for _ in range(2):  # second pass reorthogonalizes
            for i in range(j):
                q[:, j] -= (q[:, i] @ q[:, j]) * q[:, i]
        norm = np.linalg.norm(q[:, j])
        if norm <= 1e-12 * initial[j] or initial[j] == 0.0:
            raise RankDeficientError(
                f"column {j} collapsed during orthonormalization", floored=1
            )
        q[:, j] /= norm
    return q


def kron(a, b) -> np.ndarray:
    """Kronecker product."""
    return np.kron(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))


def vec(m) -> np.ndarray:
    """Column-major (column 1 first) flattening of a matrix."""
    return np.asarray(m, dtype=np.float64).reshape(-1, order="F")


def unvec(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v, dtype=np.float64).reshape((rows, cols), order="F")


def spectral_norm(a) -> float:
    """Largest singular value, computed from the Gram matrix spectrum."""
    a = _as_finite_array(a)
    if a.ndim == 1:
        a = a[:, None]
    g = a.T @ a if a.shape[0] >= a.shape[1] else a @ a.T
    lam = np.linalg.eigvalsh((g + g.T) / 2.0)[-1]
    return float(np.sqrt(max(lam, 0.0)))
