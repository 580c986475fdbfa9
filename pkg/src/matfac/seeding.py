"""Deterministic random-stream derivation.

All randomness in the package flows through Philox (a counter-based 64-bit
generator) keyed by ``numpy.random.SeedSequence`` so that results are
bit-reproducible across platforms, processes and worker counts.  A stream is
addressed by a base seed plus an integer path, e.g. ``rng_stream(seed, 3, r)``
for component 3 of replication ``r``; distinct paths yield statistically
independent streams.
"""

from __future__ import annotations

import numpy as np


def rng_stream(seed: int, *path: int) -> np.random.Generator:
    """Return the Philox generator addressed by ``(seed, *path)``."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Collapse ``(seed, *path)`` into a single integer sub-seed."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
