"""Rolling-window validation of a fitted factor structure.

Each window fits loadings on ``window`` consecutive slices, freezes them,
reconstructs the next ``eval_len`` held-out slices by re-projecting their
factors, and records the mean squared error, the unexplained variance share
and the loading-space variation against the previous window.  Windows
advance by ``eval_len`` slices.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadConfigError
from .metrics import loading_variation, rolling_stats
from .model import validate_panel

__all__ = ["rolling_validate"]


def rolling_validate(panel, window: int, eval_len: int, fit_fn) -> list[dict]:
    """Walk the panel with a frozen-loading reconstruction scheme.

    ``fit_fn`` maps a training sub-panel to a :class:`FitResult`.  Returns a
    list of per-window dicts with keys ``window``, ``start``, ``mse``,
    ``rho`` and ``v`` (``v`` is NaN for the first window, which has no
    predecessor).
    """
    panel = validate_panel(panel)
    t_len, p1, p2 = panel.shape
    if window < 1 or eval_len < 1:
        raise BadConfigError("window and eval_len must be >= 1")
    if window + eval_len > t_len:
        raise BadConfigError(
            f"window + eval_len = {window + eval_len} exceeds panel length {t_len}"
        )
    rows = []
    prev = None
    for idx, start in enumerate(range(0, t_len - window - eval_len + 1, eval_len)):
        fit = fit_fn(panel[start : start + window])
        r, c = fit.loadings.r, fit.loadings.c
        held_out = panel[start + window : start + window + eval_len]
        recon = r @ (r.T @ held_out @ c / (p1 * p2)) @ c.T
        mse, rho = rolling_stats(held_out, recon)
        v = loading_variation(fit.loadings, prev) if prev is not None else math.nan
        rows.append({"window": idx, "start": start, "mse": mse, "rho": rho, "v": v})
        prev = fit.loadings
    return rows
