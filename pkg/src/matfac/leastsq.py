"""Closed-form constrained least-squares updates for the loading matrices.

Given a factor path and a projection (or loading) on the opposite side, each
update minimizes the squared Frobenius reconstruction loss under the
``p * I`` scale constraint.  The minimizer is the scaled polar factor of the
accumulated cross-product: with ``A = sum_t X_t W2 F_t'``,

    R = sqrt(p1) * A (A'A)^(-1/2),

and the mirror-image expression for the column side.  Sums over t go through
numpy's pairwise reduction, keeping results independent of how callers
schedule replications.
"""

from __future__ import annotations

import numpy as np

from .errors import DimMismatchError
from .linalg import spd_inv_sqrt
from .model import LoadingPair

__all__ = ["update_row_loading", "update_col_loading", "common_components"]


def _check_panel_path(panel, fpath):
    if fpath.shape[0] != panel.shape[0]:
        raise DimMismatchError(
            f"factor path length {fpath.shape[0]} != panel length {panel.shape[0]}"
        )


def update_row_loading(
    panel: np.ndarray, fpath: np.ndarray, right: np.ndarray
) -> np.ndarray:
    """Best row loading (p1 x m1) given factors and the right-side matrix.

    ``right`` is the column projection during the first pass and the current
    column loading afterwards.  The result satisfies ``R'R = p1 * I`` exactly
    up to the eigensolver's accuracy; a rank-deficient cross-product Gram
    matrix raises, signaling a working dimension the data cannot support.
    """
    _check_panel_path(panel, fpath)
    p1 = panel.shape[1]
    if right.shape != (panel.shape[2], fpath.shape[2]):
        raise DimMismatchError(
            f"right factor {right.shape} does not match panel/path "
            f"({panel.shape[2]}, {fpath.shape[2]})"
        )
    accum = np.sum((panel @ right) @ fpath.transpose(0, 2, 1), axis=0)
    gram = accum.T @ accum
    return np.sqrt(p1) * accum @ spd_inv_sqrt(gram)


def update_col_loading(
    panel: np.ndarray, fpath: np.ndarray, left: np.ndarray
) -> np.ndarray:
    """Mirror image of :func:`update_row_loading`: ``C'C = p2 * I``."""
    _check_panel_path(panel, fpath)
    p2 = panel.shape[2]
    if left.shape != (panel.shape[1], fpath.shape[1]):
        raise DimMismatchError(
            f"left factor {left.shape} does not match panel/path "
            f"({panel.shape[1]}, {fpath.shape[1]})"
        )
    accum = np.sum(panel.transpose(0, 2, 1) @ (left @ fpath), axis=0)
    gram = accum.T @ accum
    return np.sqrt(p2) * accum @ spd_inv_sqrt(gram)


def common_components(loadings, fpath: np.ndarray) -> np.ndarray:
    """Reconstruct the signal panel ``S_t = L F_t R'`` for a loading pair."""
    if isinstance(loadings, LoadingPair):
        left, right = loadings.r, loadings.c
    else:
        left, right = loadings
    if left.shape[1] != fpath.shape[1] or right.shape[1] != fpath.shape[2]:
        raise DimMismatchError(
            f"loadings ({left.shape}, {right.shape}) do not match factors "
            f"{fpath.shape[1:]}"
        )
    return left @ fpath @ right.T
