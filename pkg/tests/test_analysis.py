from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolakoski import (
    LevelStats,
    RootSolverError,
    TimeBudgetError,
    check_identity,
    compute_stats,
    density_difference,
    density_step,
    growth_diagnostics,
    limit_density,
    limit_matrix_spectrum,
    pisot_root,
)

TABLE6 = {
    "L": [11, 23, 49, 107, 235, 517],
    "m": [1, 3, 9, 21, 47, 105],
    "c": [5, 10, 20, 43, 94, 206],
    "o": [0, 0, 3, 8, 18, 41],
}


def brute_force_rows(max_n):
    """Oracle: build the words as plain lists and count symbols directly."""
    block = [1, 3, 3, 3, 1, 1, 1, 3, 3, 3, 1]
    pillar = [3]
    rows = []
    for n in range(1, max_n + 1):
        rows.append((n, len(block), len(pillar), block.count(1), pillar.count(1)))
        grown = []
        for i, run in enumerate(pillar):
            grown.extend([3 if i % 2 == 0 else 1] * run)
        block = block + pillar + block
        pillar = grown
    return rows


def positional_recurrence_rows(max_n):
    """Oracle: closed recurrence over the pillar's positional composition.

    Because pillar symbols are odd, the run for element i starts at a
    position of parity i, so tracking how many 1s and 3s sit at even and
    odd positions is enough to advance the even-indexed sum (the next
    pillar-ones count) without touching any symbols.
    """
    even1, even3, odd1, odd3 = 0, 0, 0, 1  # pillar 1 = [3] at odd position
    L, m, c, o = 11, 1, 5, 0
    rows = [(1, L, m, c, o)]
    for _ in range(max_n - 1):
        o_next = even1 + 3 * even3
        even1, even3, odd1, odd3 = even1 + 2 * even3, odd3, even3, odd1 + 2 * odd3
        L, m, c, o = 2 * L + m, 3 * m - 2 * o, 2 * c + o, o_next
        rows.append((rows[-1][0] + 1, L, m, c, o))
    return rows


def as_tuples(stats_rows):
    return [
        (s.n, s.block_len, s.pillar_len, s.block_ones, s.pillar_ones)
        for s in stats_rows
    ]


# --- compute_stats ---

def test_stats_first_six_levels():
    rows = compute_stats(6)
    assert [s.block_len for s in rows] == TABLE6["L"]
    assert [s.pillar_len for s in rows] == TABLE6["m"]
    assert [s.block_ones for s in rows] == TABLE6["c"]
    assert [s.pillar_ones for s in rows] == TABLE6["o"]


def test_stats_single_level():
    (row,) = compute_stats(1)
    assert (row.block_len, row.pillar_len, row.block_ones, row.pillar_ones) == (
        11, 1, 5, 0,
    )
    assert row.growth_ratio is None


def test_stats_match_brute_force_words():
    assert as_tuples(compute_stats(10)) == brute_force_rows(10)


def test_stats_match_positional_recurrence():
    assert as_tuples(compute_stats(20)) == positional_recurrence_rows(20)


def test_stats_growth_ratios_are_exact():
    rows = compute_stats(5)
    for prev, cur in zip(rows, rows[1:]):
        assert cur.growth_ratio == Fraction(cur.block_len, prev.block_len)


def test_stats_time_budget():
    with pytest.raises(TimeBudgetError):
        compute_stats(30, time_budget=0.0)


def test_stats_rejects_zero():
    with pytest.raises(ValueError):
        compute_stats(0)


# --- fundamental identity ---

def test_identity_on_computed_levels():
    for s in compute_stats(12):
        assert check_identity(s)


def test_identity_examples():
    assert check_identity(LevelStats(1, 11, 1, 5, 0))
    assert check_identity(LevelStats(6, 517, 105, 206, 41))
    assert not check_identity(LevelStats(1, 10, 1, 5, 0))


# --- density recurrence, exact ---

def test_density_step_first_level():
    assert density_step(Fraction(5, 11), Fraction(0)) == Fraction(10, 23)


def test_density_step_level_three():
    assert density_step(Fraction(20, 49), Fraction(3, 9)) == Fraction(43, 107)


@given(st.fractions(min_value=0, max_value=1, max_denominator=997))
def test_density_step_fixes_matched_densities(d):
    assert density_step(d, d) == d


def test_density_step_rejects_out_of_range():
    with pytest.raises(ValueError):
        density_step(Fraction(3, 2), Fraction(0))
    with pytest.raises(ValueError):
        density_step(Fraction(1, 2), -1)


def test_density_difference_first_level():
    diff = density_difference(Fraction(5, 11), Fraction(0))
    assert diff == Fraction(10, 23) - Fraction(5, 11)
    assert diff == Fraction(-5, 253)


@given(
    st.fractions(min_value=0, max_value=1, max_denominator=499),
    st.fractions(min_value=0, max_value=1, max_denominator=499),
)
def test_density_difference_equals_step_change(d, delta):
    assert density_difference(d, delta) == density_step(d, delta) - d


@given(st.fractions(min_value=0, max_value=1, max_denominator=499))
def test_density_difference_vanishes_on_match(d):
    assert density_difference(d, d) == 0


def test_density_chain_matches_integer_recurrences():
    rows = compute_stats(12)
    for prev, cur in zip(rows, rows[1:]):
        stepped = density_step(prev.block_density, prev.pillar_density)
        assert stepped == cur.block_density
    for s in rows:
        assert s.pillar_fraction == 1 - 2 * s.block_density


# --- root finding and spectrum ---

def test_pisot_root_value():
    alpha = pisot_root(1e-12)
    assert round(alpha, 5) == 2.20557
    assert abs(alpha**3 - 2 * alpha**2 - 1) < 1e-12


def test_limit_density_value():
    assert round(limit_density(), 6) == 0.397215


def test_pisot_root_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        pisot_root(0)


def test_pisot_root_iteration_cap():
    with pytest.raises(RootSolverError):
        pisot_root(1e-12, max_iterations=0)


def test_spectrum_at_limit_density():
    spectrum = limit_matrix_spectrum(limit_density())
    lam1, lam2 = spectrum.eigenvalues
    assert abs(lam1 - spectrum.alpha) < 1e-9
    assert abs(lam2 - 2) < 1e-9
    assert lam1 > lam2


@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(49, 100),
                    max_denominator=200))
def test_spectrum_closed_form_and_vieta(d):
    spectrum = limit_matrix_spectrum(d)
    lam1, lam2 = spectrum.eigenvalues
    # characteristic coefficients, exact in rational arithmetic
    assert spectrum.trace == 5 - 2 * d
    assert spectrum.determinant == 6 - 4 * d
    # the quadratic factors as (x - (3-2d))(x - 2); compare both roots
    assert abs(lam1 - float(3 - 2 * d)) < 1e-12
    assert abs(lam2 - 2) < 1e-12
    assert abs(lam1 + lam2 - float(spectrum.trace)) < 1e-12
    assert abs(lam1 * lam2 - float(spectrum.determinant)) < 1e-12


def test_spectrum_at_two_fifths():
    spectrum = limit_matrix_spectrum(0.4)
    assert spectrum.trace == pytest.approx(4.2)
    assert spectrum.determinant == pytest.approx(4.4)
    lam1, lam2 = spectrum.eigenvalues
    assert lam1 != lam2
    assert lam1 == pytest.approx(2.2)
    assert lam2 == pytest.approx(2.0)


@pytest.mark.parametrize("d", [0, 0.5, 0.7, -0.1])
def test_spectrum_rejects_out_of_range(d):
    with pytest.raises(ValueError):
        limit_matrix_spectrum(d)


# --- growth diagnostics ---

def test_growth_ratios_first_six():
    report = growth_diagnostics(compute_stats(6), pisot_root())
    ratios = [r.block_ratio for r in report.rows[:-1]]
    assert [round(x, 4) for x in ratios] == [2.0909, 2.1304, 2.1837, 2.1963, 2.2000]
    assert report.rows[-1].block_ratio is None


def test_growth_bound_and_factors():
    report = growth_diagnostics(compute_stats(10), pisot_root())
    assert report.all_bounds_hold  # L_n >= 11 * 2^(n-1)
    assert report.factor_check_start == 1  # pillar density starts below 1/2
    assert report.all_factors_above_two
    gaps = [r.block_ratio_gap for r in report.rows if r.block_ratio_gap is not None]
    assert gaps == sorted(gaps, reverse=True)  # steady approach at small n


def test_growth_requires_three_rows():
    with pytest.raises(ValueError):
        growth_diagnostics(compute_stats(2), 2.2)
