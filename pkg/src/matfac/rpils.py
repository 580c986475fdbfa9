"""Iterative least-squares fitting driven by random-projection initialization.

The procedure starts from a diversified projection pair, forms projected
factors, then alternates closed-form loading updates with factor
re-projection until the stacked common-component change falls below the
threshold or the iteration budget runs out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .baselines import alpha_pca_fit
from .errors import BadConfigError, BadDimsError, DimMismatchError
from .leastsq import common_components, update_col_loading, update_row_loading
from .model import FitResult, LoadingPair, ProjectionPair, validate_panel
from .projection import estimate_factors
from .weights import gaussian_weights, hadamard_weights, make_projection_pair

__all__ = ["RpilsConfig", "rpils_fit", "one_step_fit"]

_INITS = ("gaussian", "hadamard", "alpha_pca", "explicit")
_DELTA_MODES = ("absolute", "relative")


@dataclass(frozen=True)
class RpilsConfig:
    """Fit configuration.

    ``m1``/``m2`` are the working factor counts (at least the true ranks for
    consistency; over-estimating is safe for the factor space).  ``init``
    selects the starting weights; ``seed`` feeds the Gaussian draw and
    ``weights`` supplies an explicit pair.  ``delta_mode`` switches the
    stopping delta between the absolute stacked Frobenius change (default)
    and the same change relative to the previous common-component norm.
    """

    m1: int
    m2: int
    epsilon: float = 1e-6
    max_iter: int = 100
    init: str = "gaussian"
    seed: int = 0
    weights: ProjectionPair | None = None
    delta_mode: str = "absolute"

    def __post_init__(self):
        if self.m1 < 1 or self.m2 < 1:
            raise BadConfigError(f"working dims must be >= 1, got ({self.m1}, {self.m2})")
        if not self.epsilon > 0:
            raise BadConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iter < 1:
            raise BadConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.init not in _INITS:
            raise BadConfigError(f"init must be one of {_INITS}, got {self.init!r}")
        if self.delta_mode not in _DELTA_MODES:
            raise BadConfigError(
                f"delta_mode must be one of {_DELTA_MODES}, got {self.delta_mode!r}"
            )
        if (self.weights is None) == (self.init == "explicit"):
            raise BadConfigError("weights must be supplied iff init='explicit'")


def _initial_weights(panel: np.ndarray, cfg: RpilsConfig) -> ProjectionPair:
    _, p1, p2 = panel.shape
    if cfg.m1 > p1 or cfg.m2 > p2:
        raise BadDimsError(
            f"working dims ({cfg.m1}, {cfg.m2}) exceed panel dims ({p1}, {p2})"
        )
    if cfg.init == "gaussian":
        return gaussian_weights(p1, cfg.m1, p2, cfg.m2, cfg.seed)
    if cfg.init == "hadamard":
        return hadamard_weights(p1, cfg.m1, p2, cfg.m2)
    if cfg.init == "alpha_pca":
        fit = alpha_pca_fit(panel, cfg.m1, cfg.m2)
        return make_projection_pair(fit.loadings.r, fit.loadings.c)
    w = cfg.weights
    if w.w1.shape != (p1, cfg.m1) or w.w2.shape != (p2, cfg.m2):
        raise DimMismatchError(
            f"explicit weights {w.w1.shape}/{w.w2.shape} do not match "
            f"({p1},{cfg.m1})/({p2},{cfg.m2})"
        )
    return w


def _first_pass(panel, cfg):
    """Steps 1-3: projected factors, then the two first loading updates."""
    w = _initial_weights(panel, cfg)
    factors = estimate_factors(panel, w)
    r = update_row_loading(panel, factors, w.w2)
    c = update_col_loading(panel, factors, r)
    return factors, r, c


def one_step_fit(panel, cfg: RpilsConfig) -> FitResult:
    """Single pass of the procedure (no iteration).

    With ``init='gaussian'`` this is the raw random-projection one-step
    estimator; with ``init='alpha_pca'`` the one-step refinement of the
    eigen-analysis baseline.
    """
    panel = validate_panel(panel)
    start = time.perf_counter()
    factors, r, c = _first_pass(panel, cfg)
    return FitResult(
        loadings=LoadingPair(r, c),
        factors=factors,
        iterations=0,
        converged=False,
        delta_trace=(),
        elapsed=time.perf_counter() - start,
    )


def rpils_fit(panel, cfg: RpilsConfig) -> FitResult:
    """Full iterative fit.

    Each iteration re-projects factors with the current loadings, records the
    stacked Frobenius change of the common components against the previous
    iteration, then refreshes both loadings.  The baseline for the first
    delta is the common-component panel of the first-pass state.  Stops when
    the delta falls to ``cfg.epsilon`` or after ``cfg.max_iter`` iterations.
    """
    panel = validate_panel(panel)
    start = time.perf_counter()
    _, p1, p2 = panel.shape
    factors, r, c = _first_pass(panel, cfg)
    s_prev = common_components((r, c), factors)

    deltas: list[float] = []
    converged = False
    for _ in range(cfg.max_iter):
        factors = (r.T @ panel @ c) / (p1 * p2)
        s_curr = common_components((r, c), factors)
        delta = float(np.linalg.norm(s_curr - s_prev))
        if cfg.delta_mode == "relative":
            base = float(np.linalg.norm(s_prev))
            delta = delta / base if base > 0 else (0.0 if delta == 0.0 else np.inf)
        deltas.append(delta)
        r = update_row_loading(panel, factors, c)
        c = update_col_loading(panel, factors, r)
        s_prev = s_curr
        if delta <= cfg.epsilon:
            converged = True
            break
    return FitResult(
        loadings=LoadingPair(r, c),
        factors=factors,
        iterations=len(deltas),
        converged=converged,
        delta_trace=tuple(deltas),
        elapsed=time.perf_counter() - start,
    )
