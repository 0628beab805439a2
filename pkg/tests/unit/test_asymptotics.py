"""
Unit tests for A(H)/H^α, the dyadic CDF bounds and the log-periodic profile.

The CDF bounds are checked for ordering, monotonicity in x, nesting across
depths and the symmetry of the measure about φ/2. The profile is compared
with the growth curve along H = ⌊γ·F_{k−1}⌋.
"""

import math
from fractions import Fraction

import pytest

from app.core.asymptotics import (
    ALPHA,
    PROFILE_CONSTANT,
    cdf_bounds,
    extremes,
    growth_at,
    growth_at_precise,
    growth_curve,
    limit_profile,
    log_periodic_gap,
    word_count,
)
from app.core.counting import partial_sums
from app.core.errors import OutOfDomain
from app.core.zeckendorf import fib

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

PHI_FLOAT = (1 + math.sqrt(5)) / 2
GRID = [Fraction(16 * j, 200) for j in range(21)]  # 0 .. 1.6, inside [0, φ]

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def sums_14():
    return partial_sums(fib(16) - 1)


@pytest.fixture(scope="module")
def profile_24():
    return limit_profile(25, k=24)


# ---------------------------------------------------------------------------
# 1. Normalized growth
# ---------------------------------------------------------------------------


class TestGrowth:
    def test_alpha(self):
        assert ALPHA == pytest.approx(math.log(2) / math.log(PHI_FLOAT), rel=1e-12)
        assert PROFILE_CONSTANT == pytest.approx(2 * 5 ** (ALPHA / 2), rel=1e-12)

    def test_small_value(self):
        assert growth_at(13) == pytest.approx(25 / 13 ** ALPHA, rel=1e-12)

    def test_curve_shape(self):
        curve = growth_curve(60, 6765)
        assert [s.H for s in curve] == list(range(60, 6766))
        assert curve[0].logH == pytest.approx(math.log(60))
        for s in curve:
            assert 0.4 < s.ratio < 0.7, f"ratio at H = {s.H} is {s.ratio}"

    def test_float_path_matches_precise(self):
        sums = partial_sums(50_000)
        for h in (1, 13, 987, 4181, 12_345, 50_000):
            precise = float(growth_at_precise(h, digits=30, sums=sums))
            assert abs(growth_at(h, sums) - precise) < 1e-9, f"float and mpmath ratios differ at H = {h}"

    def test_extremes_small_range(self):
        ext = extremes(60, 6765)
        assert ext.min_ratio < ext.max_ratio
        assert 60 <= ext.argmin <= 6765 and 60 <= ext.argmax <= 6765
        assert growth_at(ext.argmin) == pytest.approx(ext.min_ratio)
        assert growth_at(ext.argmax) == pytest.approx(ext.max_ratio)

    @pytest.mark.slow
    def test_extremes_near_asymptotic_constants(self):
        ext = extremes(1_000, 1_000_000)
        assert 0.515 <= ext.min_ratio <= 0.535, f"min ratio {ext.min_ratio}"
        assert 0.533 <= ext.max_ratio <= 0.553, f"max ratio {ext.max_ratio}"

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            growth_at(0)
        with pytest.raises(ValueError):
            growth_curve(10, 5)
        with pytest.raises(ValueError):
            extremes(0, 5)


# ---------------------------------------------------------------------------
# 2. Word counts and CDF bounds
# ---------------------------------------------------------------------------


class TestWordCount:
    def test_all_words_fit_below_two(self):
        for k in (2, 5, 10, 14):
            assert word_count(Fraction(2), k) == 2 ** k, f"not every length-{k} word counted"

    def test_only_the_zero_word_at_zero(self, sums_14):
        assert word_count(Fraction(0), 14, sums=sums_14) == 1

    def test_matches_enumeration(self):
        k = 8
        phi = PHI_FLOAT
        values = sorted(
            sum(((w >> (k - i)) & 1) * phi ** -i for i in range(1, k + 1))
            for w in range(2 ** k)
        )
        for x in (Fraction(1, 7), Fraction(1, 2), Fraction(9, 10), Fraction(13, 10)):
            expected = sum(1 for v in values if v <= float(x))
            assert word_count(x, k) == expected, f"word count below {x}"


class TestCdfBounds:
    def test_endpoints(self, sums_14):
        zero = cdf_bounds(0, 14, sums_14)
        assert (zero.lower_num, zero.upper_num) == (0, 1)
        top = cdf_bounds("1.618", 14, sums_14)
        assert top.lower > 0.99

    def test_symmetry_about_half_phi(self, sums_14):
        above = cdf_bounds(Fraction(8091, 10000), 14, sums_14)
        below = cdf_bounds(Fraction(8089, 10000), 14, sums_14)
        assert above.upper >= 0.5
        assert below.lower <= 0.5
        assert abs(above.midpoint - 0.5) < 0.05

    def test_ordered_and_monotone(self, sums_14):
        last = None
        for x in GRID:
            b = cdf_bounds(x, 14, sums_14)
            assert b.lower_num <= b.upper_num <= b.denominator
            if last is not None:
                assert b.lower_num >= last.lower_num and b.upper_num >= last.upper_num, f"bounds drop at x = {x}"
            last = b

    def test_nested_across_depths(self):
        for x in (Fraction(1, 3), Fraction(4, 5), Fraction(6, 5)):
            coarse = cdf_bounds(x, 10)
            fine = cdf_bounds(x, 12)
            assert coarse.lower <= fine.upper and fine.lower <= coarse.upper, f"depth 10 and 12 bounds disjoint at {x}"

    def test_domain(self):
        with pytest.raises(OutOfDomain):
            cdf_bounds(-1, 12)
        with pytest.raises(OutOfDomain):
            cdf_bounds(2, 12)
        with pytest.raises(ValueError):
            cdf_bounds(1, 1)


# ---------------------------------------------------------------------------
# 3. Limit profile
# ---------------------------------------------------------------------------


class TestLimitProfile:
    def test_grid(self, profile_24):
        assert len(profile_24) == 25
        assert profile_24[0].gamma == pytest.approx(1.0)
        assert profile_24[-1].gamma == pytest.approx(PHI_FLOAT)

    def test_values_between_asymptotic_constants(self, profile_24):
        values = [p.value for p in profile_24]
        assert all(0.5 < v < 0.57 for v in values), f"profile values {min(values)}..{max(values)}"
        spread = max(values) - min(values)
        assert 0.008 <= spread <= 0.028, f"profile spread {spread}"

    def test_growth_curve_follows_profile(self):
        for gamma in (1.0, 1.2, 1.45, 1.6):
            gap = log_periodic_gap(gamma, 22)
            assert gap < 0.01, f"growth curve misses the profile by {gap} at γ = {gamma}"

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [24, 28])
    def test_growth_curve_follows_profile_on_full_grid(self, k):
        gammas = [point.gamma for point in limit_profile(50, k)]
        assert len(gammas) == 50
        worst = max(log_periodic_gap(gamma, k) for gamma in gammas)
        assert worst <= 0.01, f"growth curve misses the profile by {worst} at k = {k}"

    def test_rejects_single_sample(self):
        with pytest.raises(ValueError):
            limit_profile(1, k=12)
