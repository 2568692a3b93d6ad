"""Exact recurrences, density maps, and spectral constants of the tower.

The integer recurrences drive (L, m, c, o) per level; densities are exact
fractions so the algebraic identities can be checked without tolerances.
The asymptotic growth rate is the real root alpha of x^3 - 2x^2 - 1
(about 2.20557), and the limit density of 1s is (3 - alpha)/2 (about
0.397215); both fall out of the 2x2 limit matrix [[3, -2], [d, 2-2d]],
whose eigenvalues are 3-2d and 2 (equal to alpha and 2 at d = (3-alpha)/2).
"""

from __future__ import annotations

import math
import time
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .blocks import initial_level, pillar_chunks, _even_position_sum
from .errors import RootSolverError, TimeBudgetError
from .stats import LevelStats, advance_stats
from .words import DEFAULT_CHUNK

Ratio = Fraction | float | int


def compute_stats(
    max_n: int,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    time_budget: float | None = None,
) -> list[LevelStats]:
    """Exact (L, m, c, o) rows for levels 1..max_n.

    The length and count recurrences are closed, but the next level's
    pillar-ones count is positional (the even-indexed elements of the
    current pillar), so each step streams the current pillar once.
    All arithmetic is exact; the only failure mode is the time budget.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    started = time.perf_counter()
    rows = [initial_level().stats]
    for n in range(1, max_n):
        if time_budget is not None and time.perf_counter() - started > time_budget:
            raise TimeBudgetError(f"pillar stream for level {n + 1}", time_budget)
        pillar_ones_next, streamed = _even_position_sum(pillar_chunks(n, chunk_size))
        assert streamed == rows[-1].pillar_len
        rows.append(advance_stats(rows[-1], pillar_ones_next))
    return rows


def check_identity(stats: LevelStats) -> bool:
    """m = L - 2c: the pillar is exactly the block's excess of 3s over 1s."""
    return stats.identity_holds


def _require_unit_interval(name: str, value: Ratio) -> None:
    if not 0 <= value <= 1:
        raise ValueError(f"{name}={value} outside [0, 1]")


def density_step(block_density: Ratio, pillar_density: Ratio) -> Ratio:
    """Next block density: (2d + delta(1 - 2d)) / (3 - 2d).

    Follows from dividing c' = 2c + o by L' = 2L + m and eliminating m/L
    via the fundamental identity.  Exact when given Fractions.
    """
    _require_unit_interval("block density", block_density)
    _require_unit_interval("pillar density", pillar_density)
    d, delta = block_density, pillar_density
    return (2 * d + delta * (1 - 2 * d)) / (3 - 2 * d)


def density_difference(block_density: Ratio, pillar_density: Ratio) -> Ratio:
    """Change in block density: (delta - d)(1 - 2d) / (3 - 2d).

    Algebraically equal to density_step(d, delta) - d; vanishes exactly
    when the pillar density matches the block density.
    """
    _require_unit_interval("block density", block_density)
    _require_unit_interval("pillar density", pillar_density)
    d, delta = block_density, pillar_density
    return ((delta - d) * (1 - 2 * d)) / (3 - 2 * d)


def pisot_root(tolerance: float = 1e-12, *, max_iterations: int = 200) -> float:
    """Unique real root of x^3 - 2x^2 - 1, by safeguarded Newton on [2, 3].

    Newton steps start from 2.2 and fall back to bisection whenever a
    step would leave the current bracket; the result satisfies
    |x^3 - 2x^2 - 1| < tolerance.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    poly = lambda x: x * x * x - 2 * x * x - 1
    deriv = lambda x: 3 * x * x - 4 * x
    lo, hi = 2.0, 3.0  # poly(2) = -1 < 0 < 8 = poly(3)
    x = 2.2
    for _ in range(max_iterations):
        fx = poly(x)
        if abs(fx) < tolerance:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        step = x - fx / deriv(x)
        x = step if lo < step < hi else 0.5 * (lo + hi)
    raise RootSolverError(
        f"no convergence to {tolerance:g} within {max_iterations} iterations"
    )


def limit_density(alpha: float | None = None, tolerance: float = 1e-12) -> float:
    """Asymptotic density of 1s: (3 - alpha) / 2."""
    if alpha is None:
        alpha = pisot_root(tolerance)
    return (3 - alpha) / 2


@dataclass(frozen=True)
class SpectralConstants:
    """Growth constants of the linear system driving (L, c).

    ``matrix`` is [[3, -2], [density, 2 - 2*density]]; its entries, trace
    and determinant keep the arithmetic type of the density argument
    (exact for Fractions).  Eigenvalues are floats, sorted descending.
    """

    alpha: float
    limit_density: float
    density: Ratio
    matrix: tuple[tuple[Ratio, Ratio], tuple[Ratio, Ratio]]
    eigenvalues: tuple[float, float]

    @property
    def trace(self) -> Ratio:
        """Sum of eigenvalues; equals 5 - 2*density."""
        return self.matrix[0][0] + self.matrix[1][1]

    @property
    def determinant(self) -> Ratio:
        """Product of eigenvalues; equals 6 - 4*density."""
        m = self.matrix
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def limit_matrix_spectrum(
    density: Ratio, *, tolerance: float = 1e-12
) -> SpectralConstants:
    """Spectrum of [[3, -2], [d, 2-2d]] for a density d in (0, 1/2).

    The characteristic polynomial is x^2 - (5-2d)x + (6-4d); roots come
    from the quadratic formula in the cancellation-free arrangement
    (larger root first, smaller as determinant / larger).
    """
    if not 0 < density < Fraction(1, 2):
        raise ValueError(f"density {density} outside (0, 1/2)")
    alpha = pisot_root(tolerance)
    matrix = ((3, -2), (density, 2 - 2 * density))
    trace = matrix[0][0] + matrix[1][1]
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    discriminant = trace * trace - 4 * det  # equals (1 - 2d)^2 >= 0
    root = math.sqrt(float(discriminant))
    larger = (float(trace) + root) / 2  # trace > 0, no cancellation
    smaller = float(det) / larger
    return SpectralConstants(
        alpha=alpha,
        limit_density=(3 - alpha) / 2,
        density=density,
        matrix=matrix,
        eigenvalues=(larger, smaller),
    )


@dataclass(frozen=True)
class GrowthRow:
    """Per-level growth diagnostics; ratios look one level ahead."""

    n: int
    block_ratio: float | None        # L_{n+1} / L_n
    pillar_ratio: float | None       # m_{n+1} / m_n
    block_ratio_gap: float | None    # |block_ratio - alpha|
    doubling_bound_ok: bool          # L_n >= 11 * 2^(n-1)
    pillar_factor: float             # 3 - 2*delta_n
    pillar_factor_above_two: bool


@dataclass(frozen=True)
class GrowthReport:
    alpha: float
    rows: tuple[GrowthRow, ...]
    factor_check_start: int  # first level with pillar density < 1/2

    @property
    def all_bounds_hold(self) -> bool:
        return all(r.doubling_bound_ok for r in self.rows)

    @property
    def all_factors_above_two(self) -> bool:
        return all(
            r.pillar_factor_above_two
            for r in self.rows
            if r.n >= self.factor_check_start
        )


def growth_diagnostics(
    stats: Sequence[LevelStats], alpha: float
) -> GrowthReport:
    """Growth-rate evidence: consecutive ratios, the doubling lower bound
    L_n >= 11 * 2^(n-1), and the pillar expansion factor 3 - 2*delta_n,
    which exceeds 2 wherever the pillar density sits below 1/2.
    """
    if len(stats) < 3:
        raise ValueError("need at least three levels of statistics")
    start = next(
        (s.n for s in stats if s.pillar_density < Fraction(1, 2)),
        stats[-1].n + 1,
    )
    rows = []
    for i, s in enumerate(stats):
        nxt = stats[i + 1] if i + 1 < len(stats) else None
        block_ratio = (
            float(Fraction(nxt.block_len, s.block_len)) if nxt else None
        )
        pillar_ratio = (
            float(Fraction(nxt.pillar_len, s.pillar_len)) if nxt else None
        )
        factor = float(3 - 2 * s.pillar_density)
        rows.append(
            GrowthRow(
                n=s.n,
                block_ratio=block_ratio,
                pillar_ratio=pillar_ratio,
                block_ratio_gap=(
                    abs(block_ratio - alpha) if block_ratio is not None else None
                ),
                doubling_bound_ok=s.block_len >= 11 * 2 ** (s.n - 1),
                pillar_factor=factor,
                pillar_factor_above_two=factor > 2,
            )
        )
    return GrowthReport(alpha=alpha, rows=tuple(rows), factor_check_start=start)
