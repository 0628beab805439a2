"""
Unit tests for the golden rotation, the orbit strip and the cocycle h.

The orbit of 0 under T is checked three ways (direct formula, successor
walk, repeated rotation), and h along it is checked against R(n+1)/R(n).
"""

import random
from fractions import Fraction

import pytest

from app.core.counting import r_values
from app.core.dynamics import (
    LOWER,
    UPPER,
    OrbitPoint,
    cocycle_from,
    cocycle_r,
    g_index,
    h_eval,
    h_pair,
    in_strip,
    k_eval,
    orbit,
    orbit_point,
    rotate,
    rotate_inverse,
    successor,
    word_point,
)
from app.core.errors import Breakpoint, DepthExceeded, InvalidPoint, OutOfDomain
from app.core.golden import INV_PHI, INV_PHI2, INV_PHI3, INV_PHI4, INV_PHI5, PHI, ZERO, GoldenNum
from app.core.zeckendorf import encode

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def values() -> list[int]:
    return r_values(10_001)


@pytest.fixture(scope="module")
def points() -> list[OrbitPoint]:
    return list(orbit(10_000))


# ---------------------------------------------------------------------------
# 1. Rotation
# ---------------------------------------------------------------------------


class TestRotate:
    def test_examples(self):
        assert rotate(ZERO) == INV_PHI2
        assert rotate(INV_PHI2) == GoldenNum(3, -2)

    def test_stays_below_upper_edge(self):
        assert rotate(INV_PHI - INV_PHI5) < INV_PHI

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            rotate(INV_PHI)
        with pytest.raises(OutOfDomain):
            rotate(-INV_PHI2 - INV_PHI5)

    def test_inverse(self, points):
        for pt in points[:2000]:
            assert rotate_inverse(rotate(pt.y)) == pt.y, f"T⁻¹∘T fails at y_{pt.n}"


# ---------------------------------------------------------------------------
# 2. Orbit points
# ---------------------------------------------------------------------------


class TestOrbit:
    def test_first_points(self):
        assert orbit_point(0) == OrbitPoint(0, ZERO, ZERO)
        assert orbit_point(1).y == INV_PHI2
        assert successor(orbit_point(0)) == OrbitPoint(1, GoldenNum(1, 1), GoldenNum(2, -1))

    def test_direct_formula_matches_walk(self, points):
        for pt in points[::37]:
            assert orbit_point(pt.n) == pt, f"direct and walked orbit differ at n = {pt.n}"

    def test_matches_repeated_rotation(self, points):
        y = ZERO
        for pt in points:
            assert pt.y == y, f"y_{pt.n} is not T^{pt.n}(0)"
            y = rotate(y)

    def test_confinement_and_conjugacy(self, points):
        for pt in points:
            assert in_strip(pt.y), f"y_{pt.n} = {pt.y} left the strip"
            assert pt.y == pt.x.conjugate()
            assert pt.x.q == pt.n

    def test_increments(self, points):
        steps = {b.x - a.x for a, b in zip(points, points[1:])}
        assert steps == {PHI, PHI + 1}

    def test_g_increments(self, points):
        for a, b in zip(points, points[1:]):
            assert g_index(b.x, b.y) == g_index(a.x, a.y) + 1

    def test_never_hits_breakpoint(self, points):
        assert all(pt.y != INV_PHI3 for pt in points)

    def test_equidistribution(self):
        hits = sum(1 for pt in orbit(99_999) if -INV_PHI4 <= pt.y <= ZERO)
        assert abs(hits / 100_000 - 0.1458980338) < 1e-2

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            orbit_point(-1)


class TestGIndex:
    def test_examples(self):
        assert g_index(ZERO, ZERO) == 0
        assert g_index(GoldenNum(1, 1), GoldenNum(2, -1)) == 1

    def test_not_conjugate(self):
        with pytest.raises(InvalidPoint):
            g_index(GoldenNum(1, 1), GoldenNum(1, 1))

    def test_outside_strip(self):
        x = GoldenNum(0, 1)  # conjugate ψ ≈ −0.618 is below −1/φ²
        with pytest.raises(InvalidPoint):
            g_index(x, x.conjugate())

    def test_word_point_is_representation_independent(self):
        assert word_point((1, 0, 0, 1)) == orbit_point(6)
        assert word_point((0, 1, 1, 1)) == orbit_point(6)
        for n in range(500):
            assert word_point(encode(n).bits) == orbit_point(n), f"word_point(⟨{n}⟩)"


# ---------------------------------------------------------------------------
# 3. The cocycle h and its companion k
# ---------------------------------------------------------------------------


class TestH:
    def test_examples(self):
        assert h_eval(ZERO) == 1
        assert h_eval(orbit_point(3).y) == Fraction(1, 2)
        assert h_eval(orbit_point(7).y) == 3

    def test_base_plateau_is_closed(self):
        assert h_eval(-INV_PHI4) == 1
        assert h_eval(ZERO) == 1

    def test_ratio_identity(self, points, values):
        for pt in points:
            expected = Fraction(values[pt.n + 1], values[pt.n])
            assert h_eval(pt.y) == expected, f"h(y_{pt.n}) ≠ R({pt.n + 1})/R({pt.n})"

    def test_pair_is_reduced(self, points):
        for pt in points[:3000]:
            num, den = h_pair(pt.y)
            assert Fraction(num, den).denominator == den

    def test_nonnegative_log_region(self, points):
        for pt in points[:5000]:
            region = (-INV_PHI2 <= pt.y <= ZERO) or (INV_PHI2 <= pt.y < INV_PHI)
            assert (h_eval(pt.y) >= 1) == region, f"log h sign wrong at y_{pt.n}"

    def test_breakpoints(self):
        for y in (INV_PHI3, LOWER, UPPER):
            with pytest.raises(Breakpoint):
                h_eval(y)

    def test_depth_bound(self):
        with pytest.raises(DepthExceeded):
            h_pair(orbit_point(7).y, slack=-1000)


class TestK:
    def test_examples(self):
        assert k_eval(INV_PHI3) == 1
        assert k_eval(INV_PHI2) == 1
        assert k_eval(orbit_point(8).y) == 3

    def test_h_is_k_after_rotation(self, points):
        rng = random.Random(11)
        for pt in rng.sample(points, 200):
            assert h_eval(pt.y) == k_eval(rotate(pt.y)), f"h ≠ k∘T at y_{pt.n}"

    def test_breakpoints(self):
        for y in (ZERO, LOWER):
            with pytest.raises(Breakpoint):
                k_eval(y)


class TestCocycle:
    def test_examples(self):
        assert cocycle_r(0) == 1
        assert cocycle_r(1) == 1
        assert cocycle_r(8) == 3

    def test_matches_counting(self, values):
        for n in range(0, 3000, 97):
            assert cocycle_r(n) == values[n], f"cocycle_r({n}) = {cocycle_r(n)}, expected {values[n]}"

    def test_carry_forward(self, values):
        assert cocycle_from(5000, values[5000], 10_000) == values[10_000]

    @pytest.mark.slow
    def test_running_product_every_n(self, values):
        cur = 1
        for n in range(10_000):
            assert cur == values[n], f"running product at {n} is {cur}, expected {values[n]}"
            cur = cocycle_from(n, cur, n + 1)
        assert cur == values[10_000]
        assert cocycle_r(10_000) == values[10_000]
