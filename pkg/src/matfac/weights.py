"""Generation and validation of diversified projection weights."""

from __future__ import annotations

import numpy as np

from .errors import BadDimsError, DegenerateWeightsError
from .model import ProjectionPair
from .seeding import rng_stream

_MIN_GRAM_EIG = 1e-6
_MAX_RETRIES = 5


def _diagnostics(w: np.ndarray) -> tuple[float, float]:
    gram = w.T @ w / w.shape[0]
    return float(np.abs(w).max()), float(np.linalg.eigvalsh(gram)[0])


def make_projection_pair(w1, w2) -> ProjectionPair:
    """Wrap explicit weight matrices, computing their diagnostics."""
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    d1, d2 = _diagnostics(w1), _diagnostics(w2)
    return ProjectionPair(w1, w2, (d1[0], d2[0]), (d1[1], d2[1]))


def _check_dims(p1, m1, p2, m2):
    for p, m, side in ((p1, m1, "row"), (p2, m2, "column")):
        if not (1 <= m <= p):
            raise BadDimsError(f"{side} weights need 1 <= m <= p, got m={m}, p={p}")


def gaussian_weights(p1: int, m1: int, p2: int, m2: int, seed: int) -> ProjectionPair:
    """Standard normal projection pair from a deterministic stream.

    The same ``(dims, seed)`` always yields the same pair.  If either Gram
    matrix ``W'W/p`` is near-singular the draw is retried on a sub-stream, at
    most 5 times, before :class:`DegenerateWeightsError` is raised.
    """
    _check_dims(p1, m1, p2, m2)
    for attempt in range(_MAX_RETRIES + 1):
        rng = rng_stream(seed, attempt)
        w1 = rng.standard_normal((p1, m1))
        w2 = rng.standard_normal((p2, m2))
        pair = make_projection_pair(w1, w2)
        if min(pair.min_gram_eig) > _MIN_GRAM_EIG:
            return pair
    raise DegenerateWeightsError(
        f"no well-conditioned draw after {_MAX_RETRIES} retries (seed={seed})"
    )


def _sylvester_hadamard(order: int) -> np.ndarray:
    h = np.ones((1, 1))
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return h


def hadamard_weights(p1: int, m1: int, p2: int, m2: int) -> ProjectionPair:
    """Walsh-Hadamard projection pair (entries in {-1, +1}), deterministic.

    Each side takes the first ``m`` columns of the Sylvester-construction
    matrix of order ``2**ceil(log2 p)``, truncated to ``p`` rows.
    """
    _check_dims(p1, m1, p2, m2)
    mats = []
    for p, m in ((p1, m1), (p2, m2)):
        order = 1 << max(p - 1, 0).bit_length()
        mats.append(_sylvester_hadamard(order)[:p, :m])
    return make_projection_pair(*mats)
