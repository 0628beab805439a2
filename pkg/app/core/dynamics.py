"""The golden rotation T, the lattice strip of orbit points and the cocycle h.

Orbit points are (x_n, y_n) = (p + nφ, p + nψ) with y_n ∈ [−1/φ², 1/φ).
Both coordinates are stored as GoldenNums: y is the conjugate of x, and its
real value is the coordinate itself.

Interval convention: every branch is left-closed/right-open except the base
plateau of h, [−1/φ⁴, 0], and of k, [1/φ³, 1/φ²], which are closed.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from app.core.errors import Breakpoint, DepthExceeded, InvalidPoint, OutOfDomain
from app.core.golden import (
    INV_PHI,
    INV_PHI2,
    INV_PHI3,
    INV_PHI4,
    PHI,
    PSI,
    ZERO,
    GoldenNum,
    floor_mul_psi,
    sign,
)

logger = logging.getLogger(__name__)

Ratio = Fraction

LOWER = -INV_PHI2
UPPER = INV_PHI
ROTATION = INV_PHI2

_NEG_PHI = -PHI
_STEP_LOW = (GoldenNum(1, 1), GoldenNum(2, -1))  # (1 + φ, 1 + ψ)
_STEP_HIGH = (PHI, PSI)


def in_strip(y: GoldenNum) -> bool:
    return LOWER <= y < UPPER


def rotate(y: GoldenNum) -> GoldenNum:
    if not in_strip(y):
        raise OutOfDomain(f"rotate expects y in [-1/φ², 1/φ), got {y}")
    if y < INV_PHI3:
        return y + ROTATION
    return y + ROTATION - 1


def rotate_inverse(y: GoldenNum) -> GoldenNum:
    if not in_strip(y):
        raise OutOfDomain(f"rotate_inverse expects y in [-1/φ², 1/φ), got {y}")
    if y < ZERO:
        return y - ROTATION + 1
    return y - ROTATION


@dataclass(frozen=True, slots=True)
class OrbitPoint:
    n: int
    x: GoldenNum
    y: GoldenNum


def orbit_point(n: int) -> OrbitPoint:
    """(x_n, y_n) by direct formula: q = n, p the unique integer putting p + nψ in the strip."""
    if n < 0:
        raise ValueError(f"orbit_point expects n >= 0, got {n}")
    f = floor_mul_psi(n)
    # frac(nψ) ≥ 1/φ would put −f + nψ at or above the upper edge
    p = -f - 1 if sign(GoldenNum(n - f, -n) - INV_PHI) >= 0 else -f
    x = GoldenNum(p, n)
    return OrbitPoint(n=n, x=x, y=x.conjugate())


def successor(pt: OrbitPoint) -> OrbitPoint:
    dx, dy = _STEP_LOW if pt.y < INV_PHI3 else _STEP_HIGH
    return OrbitPoint(n=pt.n + 1, x=pt.x + dx, y=pt.y + dy)


def orbit(limit: int, start: int = 0) -> Iterator[OrbitPoint]:
    """Orbit points start..limit: one random access, then successor steps."""
    if start > limit:
        return
    pt = orbit_point(start)
    while True:
        yield pt
        if pt.n >= limit:
            return
        pt = successor(pt)


def g_index(x: GoldenNum, y: GoldenNum) -> int:
    """g(x, y) = (x − y)/√5, which is the φ-coefficient of x."""
    if y != x.conjugate():
        raise InvalidPoint(f"y = {y} is not the conjugate of x = {x}")
    if not in_strip(y):
        raise InvalidPoint(f"y = {y} lies outside the strip [-1/φ², 1/φ)")
    if x.q < 0:
        raise InvalidPoint(f"({x}, {y}) has negative index {x.q}")
    return x.q


def word_point(bits: Sequence[int]) -> OrbitPoint:
    """Lattice point (T_{a₁}∘…∘T_{a_k}(0), S_{a₁}∘…∘S_{a_k}(0)) of any 0/1 word."""
    x = ZERO
    k = len(bits)
    for i, bit in enumerate(bits, start=1):
        if bit:
            x = x + PHI ** (k + 2 - i)
    y = x.conjugate()
    return OrbitPoint(n=g_index(x, y), x=x, y=y)


def _depth_bound(y: GoldenNum, slack: Optional[int]) -> int:
    if slack is None:
        from app.dependencies import get_settings

        slack = get_settings().H_DEPTH_SLACK
    return 4 * max(abs(y.p).bit_length(), abs(y.q).bit_length()) + slack


_ADD_ONE = 0
_MOBIUS = 1


def _fold(ops: list[int]) -> tuple[int, int]:
    # value starts at 1 on the base plateau; replay the unwound branches outward
    num, den = 1, 1
    for op in reversed(ops):
        if op == _ADD_ONE:
            num += den
        else:
            den += num
    return num, den


def h_pair(y: GoldenNum, slack: Optional[int] = None) -> tuple[int, int]:
    """h(y) as a coprime (numerator, denominator) pair."""
    if not (LOWER < y < UPPER) or y == INV_PHI3:
        raise Breakpoint(f"h is undefined at {y}")
    bound = _depth_bound(y, slack)
    ops: list[int] = []
    z = y
    steps = 0
    while True:
        if steps > bound:
            raise DepthExceeded(f"h recursion from {y} passed {bound} steps")
        steps += 1
        if z < -INV_PHI4:
            ops.append(_ADD_ONE)
            z = z * _NEG_PHI
        elif z <= ZERO:
            return _fold(ops)
        elif z < INV_PHI3:
            ops.append(_MOBIUS)
            z = z * _NEG_PHI + INV_PHI
        else:
            z = z * _NEG_PHI + INV_PHI


def h_eval(y: GoldenNum, slack: Optional[int] = None) -> Ratio:
    num, den = h_pair(y, slack)
    return Fraction(num, den)


def k_pair(y: GoldenNum, slack: Optional[int] = None) -> tuple[int, int]:
    if not (LOWER < y < UPPER) or y == ZERO:
        raise Breakpoint(f"k is undefined at {y}")
    bound = _depth_bound(y, slack)
    ops: list[int] = []
    z = y
    steps = 0
    while True:
        if steps > bound:
            raise DepthExceeded(f"k recursion from {y} passed {bound} steps")
        steps += 1
        if z < ZERO:
            z = z * _NEG_PHI
        elif z < INV_PHI3:
            ops.append(_ADD_ONE)
            z = z * _NEG_PHI
        elif z <= INV_PHI2:
            return _fold(ops)
        else:
            ops.append(_MOBIUS)
            z = z * _NEG_PHI + INV_PHI


def k_eval(y: GoldenNum, slack: Optional[int] = None) -> Ratio:
    num, den = k_pair(y, slack)
    return Fraction(num, den)


def cocycle_r(n: int) -> int:
    """R(n) as the telescoping product of h along the orbit of 0."""
    if n < 0:
        raise ValueError(f"cocycle_r expects n >= 0, got {n}")
    return cocycle_from(0, 1, n)


def cocycle_from(start: int, r_start: int, n: int) -> int:
    """Carry R(start) forward to R(n) by multiplying h(y_k) for start ≤ k < n."""
    cur = r_start
    for pt in orbit(n - 1, start):
        num, den = h_pair(pt.y)
        scaled = cur * num
        if scaled % den:
            raise ArithmeticError(f"h(y_{pt.n}) = {num}/{den} does not divide R({pt.n}) = {cur}")
        cur = scaled // den
    return cur
