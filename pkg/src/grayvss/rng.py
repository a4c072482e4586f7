"""Seeded random source for share generation.

Draws are defined on raw 64-bit PCG64 outputs so the sequence depends only on
the seed and the number of draws taken, never on how callers batch them.
A value in ``range(k)`` is ``raw % k``, redrawing any raw output at or above
the largest multiple of ``k`` that fits in 64 bits.
"""

from __future__ import annotations

import secrets

import numpy as np

from .errors import DomainError

SEED_BITS = 64


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < 2**SEED_BITS:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return int(seed)


class RandomStream:
    def __init__(self, seed: int | None = None):
        self.seed = secrets.randbits(SEED_BITS) if seed is None else check_seed(seed)
        self._bitgen = np.random.PCG64(self.seed)

    def __repr__(self):
        return f"RandomStream(seed={self.seed})"

    def choices(self, k: int, shape=()) -> np.ndarray:
        """Uniform integers in ``range(k)`` with the given shape, consumed in C order."""
        if k < 1:
            raise DomainError(f"k must be positive, got {k}")
        n = int(np.prod(shape, dtype=np.int64))
        if n == 0:
            return np.zeros(shape, dtype=np.int64)
        limit = (2**64 // k) * k
        raw = self._bitgen.random_raw(n)
        if limit < 2**64 and (raw >= np.uint64(limit)).any():
            raw = self._redraw(raw, limit)
        return (raw % np.uint64(k)).astype(np.int64).reshape(shape)

    def _redraw(self, raw: np.ndarray, limit: int) -> np.ndarray:
        # Rejected outputs are dropped and the stream continues, so accepted
        # values keep their relative order.
        kept = [int(x) for x in raw if int(x) < limit]
        while len(kept) < len(raw):
            x = int(self._bitgen.random_raw())
            if x < limit:
                kept.append(x)
        return np.array(kept, dtype=np.uint64)


def as_stream(rng: RandomStream | int | None) -> RandomStream:
    if isinstance(rng, RandomStream):
        return rng
    return RandomStream(rng)
