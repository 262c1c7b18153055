"""Deterministic named RNG streams.

Every run derives independent streams from (base seed, phase, stream
name) so that adding machinery on one stream (e.g. a discriminator) can
never perturb another, and so that a pipeline phase rerun from scratch
reproduces the original run bit for bit.
"""

from __future__ import annotations

import zlib

import numpy as np


def _tag(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def stream(base_seed: int, phase: str, name: str) -> np.random.Generator:
    """Generator keyed by (seed, phase, stream-name), order-independent."""
    ss = np.random.SeedSequence([int(base_seed), _tag(phase), _tag(name)])
    return np.random.Generator(np.random.PCG64(ss))


class Streams:
    """Lazily materialized named streams for one (seed, phase)."""

    def __init__(self, base_seed: int, phase: str):
        self.base_seed = int(base_seed)
        self.phase = phase
        self._cache = {}

    def get(self, name: str) -> np.random.Generator:
        if name not in self._cache:
            self._cache[name] = stream(self.base_seed, self.phase, name)
        return self._cache[name]
