"""Per-level integer statistics of the block-pillar tower.

All counts are exact Python integers (arbitrary precision), all derived
ratios exact fractions; nothing here is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LevelStats:
    """Exact counts for one tower level.

    block_len    L, length of the block
    pillar_len   m, length of the pillar
    block_ones   c, occurrences of 1 in the block
    pillar_ones  o, occurrences of 1 in the pillar
    growth_ratio block_len relative to the previous level (None at level 1)
    """

    n: int
    block_len: int
    pillar_len: int
    block_ones: int
    pillar_ones: int
    growth_ratio: Fraction | None = None

    @property
    def block_density(self) -> Fraction:
        """Density of 1s in the block (d)."""
        return Fraction(self.block_ones, self.block_len)

    @property
    def pillar_density(self) -> Fraction:
        """Density of 1s in the pillar (delta)."""
        return Fraction(self.pillar_ones, self.pillar_len)

    @property
    def pillar_fraction(self) -> Fraction:
        """Pillar-to-block length ratio (lambda = m/L)."""
        return Fraction(self.pillar_len, self.block_len)

    @property
    def identity_holds(self) -> bool:
        """Pillar length equals the block's excess of 3s over 1s (m = L - 2c)."""
        return self.pillar_len == self.block_len - 2 * self.block_ones


def advance_stats(stats: LevelStats, next_pillar_ones: int) -> LevelStats:
    """One recurrence step.

    L' = 2L + m     (block' = block . pillar . block)
    m' = 3m - 2o    (pillar' expands each pillar symbol into a run; each 1
                     contributes 1 symbol, each 3 contributes 3)
    c' = 2c + o
    o' is supplied by the caller: it is the sum of the even-indexed
    elements of the current pillar, which the recurrence alone cannot see.
    """
    block_len = 2 * stats.block_len + stats.pillar_len
    pillar_len = 3 * stats.pillar_len - 2 * stats.pillar_ones
    block_ones = 2 * stats.block_ones + stats.pillar_ones
    return LevelStats(
        n=stats.n + 1,
        block_len=block_len,
        pillar_len=pillar_len,
        block_ones=block_ones,
        pillar_ones=next_pillar_ones,
        growth_ratio=Fraction(block_len, stats.block_len),
    )
