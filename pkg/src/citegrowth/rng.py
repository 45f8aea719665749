"""Seeded random source shared by the generators."""

from __future__ import annotations

import hashlib
import math
import random
from typing import Collection, Hashable, TypeVar

T = TypeVar("T", bound=Hashable)


def realization_seed(base_seed: int, index: int) -> int:
    """Derive a 64-bit seed from ``(base_seed, index)``, independent of run order."""
    digest = hashlib.blake2b(f"{base_seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class Rng(random.Random):
    """``random.Random`` plus the geometric and subset draws the models use."""

    def __init__(self, seed: int = 0):
        self.seed_value = seed
        super().__init__(seed)

    def geometric_count(self, mean: float) -> int:
        """Draw X on {0, 1, 2, ...} with P(X=k) = s(1-s)^k and E[X] = ``mean``.

        Success probability is ``s = 1/(1+mean)``, so a mean of
        ``p/(1-p)`` gives ``s = 1-p``.
        """
        if mean < 0:
            raise ValueError(f"geometric mean must be >= 0, got {mean}")
        if mean == 0:
            return 0
        return self._geometric(math.log(mean / (1.0 + mean)))

    def _geometric(self, log_ratio: float) -> int:
        # inversion: P(X >= k) = ratio**k
        return int(math.log(1.0 - self.random()) / log_ratio)

    def sample_subset(self, candidates: Collection[T], count: int) -> list[T]:
        """Up to ``count`` distinct elements of ``candidates``, uniformly without replacement."""
        if count <= 0:
            return []
        pool = list(candidates)
        if count >= len(pool):
            return pool
        return self.sample(pool, count)
