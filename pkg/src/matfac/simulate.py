"""Synthetic matrix panels: AR(1) factors, matrix-normal idiosyncratic noise.

Loadings are drawn uniform on (-1, 1); factors and noise follow AR(1)
recursions whose innovations are scaled by ``sqrt(1 - coef^2)`` so the
stationary entry variance is one.  Noise innovations are matrix normal with
row/column covariances that have unit diagonal and off-diagonal entries
``1/p1`` and ``1/p2``.  Every draw comes from component-wise deterministic
streams, so a config reproduces bit-identically and individual components
can be regenerated in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import BadConfigError
from .linalg import spd_sqrt
from .model import LoadingPair, SimulationTruth
from .seeding import rng_stream

__all__ = ["SimConfig", "simulate_panel", "scenario_grid", "error_covariances"]

# stream indices under the config seed
_STREAM_R, _STREAM_C, _STREAM_F, _STREAM_U = 0, 1, 2, 3


@dataclass(frozen=True)
class SimConfig:
    t_len: int
    p1: int
    p2: int
    k1: int = 3
    k2: int = 3
    phi: float = 0.1
    psi: float = 0.1
    seed: int = 0
    burn_in: int = 200

    def __post_init__(self):
        if min(self.t_len, self.p1, self.p2, self.k1, self.k2) < 1:
            raise BadConfigError("all dimensions must be positive")
        if self.k1 > self.p1 or self.k2 > self.p2:
            raise BadConfigError(
                f"ranks ({self.k1}, {self.k2}) exceed dims ({self.p1}, {self.p2})"
            )
        if not (abs(self.phi) < 1 and abs(self.psi) < 1):
            raise BadConfigError("AR coefficients must satisfy |coef| < 1")
        if self.burn_in < 0:
            raise BadConfigError("burn_in must be >= 0")


def error_covariances(p1: int, p2: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column noise covariances: unit diagonal, off-diagonal 1/p."""
    u = np.full((p1, p1), 1.0 / p1) + (1.0 - 1.0 / p1) * np.eye(p1)
    v = np.full((p2, p2), 1.0 / p2) + (1.0 - 1.0 / p2) * np.eye(p2)
    return u, v


def _ar1_path(innovations: np.ndarray, coef: float, keep: int) -> np.ndarray:
    scale = np.sqrt(1.0 - coef * coef)
    state = np.zeros_like(innovations[0])
    out = np.empty((keep,) + innovations.shape[1:])
    drop = innovations.shape[0] - keep
    for t, innov in enumerate(innovations):
        state = coef * state + scale * innov
        if t >= drop:
            out[t - drop] = state
    return out


def simulate_panel(cfg: SimConfig) -> tuple[np.ndarray, SimulationTruth]:
    """Draw one panel and its ground truth.

    Returns ``(panel, truth)`` where ``panel[t] = R F_t C' + E_t``.  The
    AR(1) recursions start from a zero state and discard ``cfg.burn_in``
    steps, which approximates the stationary law to within
    ``|coef|**burn_in``.
    """
    total = cfg.burn_in + cfg.t_len
    r = rng_stream(cfg.seed, _STREAM_R).uniform(-1.0, 1.0, (cfg.p1, cfg.k1))
    c = rng_stream(cfg.seed, _STREAM_C).uniform(-1.0, 1.0, (cfg.p2, cfg.k2))

    eps = rng_stream(cfg.seed, _STREAM_F).standard_normal((total, cfg.k1, cfg.k2))
    factors = _ar1_path(eps, cfg.phi, cfg.t_len)

    u_cov, v_cov = error_covariances(cfg.p1, cfg.p2)
    u_root, v_root = spd_sqrt(u_cov), spd_sqrt(v_cov)
    gauss = rng_stream(cfg.seed, _STREAM_U).standard_normal((total, cfg.p1, cfg.p2))
    noise = _ar1_path(u_root @ gauss @ v_root, cfg.psi, cfg.t_len)

    panel = r @ factors @ c.T + noise
    truth = SimulationTruth(LoadingPair(r, c), factors, noise)
    return panel, truth


def scenario_grid(which: str) -> list[SimConfig]:
    """The two benchmark grids: five sizes each, rank (3, 3), AR coefs 0.1.

    Grid A keeps ``p1 = 20`` and grows ``T = p2``; grid B mirrors it with
    ``p2 = 20`` and ``T = p1``.  Returned configs carry ``seed=0``; callers
    substitute per-replication seeds via :func:`dataclasses.replace`.
    """
    if which not in ("A", "B"):
        raise BadConfigError(f"scenario must be 'A' or 'B', got {which!r}")
    sizes = (20, 50, 100, 150, 200)
    if which == "A":
        return [SimConfig(t_len=n, p1=20, p2=n) for n in sizes]
    return [SimConfig(t_len=n, p1=n, p2=20) for n in sizes]


def reseeded(cfg: SimConfig, seed: int) -> SimConfig:
    """Copy of ``cfg`` with a different seed."""
    return replace(cfg, seed=seed)
