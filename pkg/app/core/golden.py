"""Exact arithmetic in Z[φ], φ² = φ + 1.

Every number is held as p + qφ with Python integers, so nothing here ever
rounds. The conjugate embedding φ ↦ ψ = 1 − φ maps p + qφ to (p + q) − qφ.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from math import isqrt

import mpmath


def floor_sqrt5_times(m: int) -> int:
    """⌊m·√5⌋ for any integer m."""
    if m >= 0:
        return isqrt(5 * m * m)
    # m√5 is irrational for m ≠ 0, so the ceiling is one above the floor
    return -isqrt(5 * m * m) - 1


def _sign_a_plus_b_sqrt5(a: int, b: int) -> int:
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    if a > 0:
        return 1 if a * a > 5 * b * b else -1
    return 1 if 5 * b * b > a * a else -1


@total_ordering
class GoldenNum:
    __slots__ = ("_p", "_q")

    def __init__(self, p: int = 0, q: int = 0) -> None:
        self._p: int = p
        self._q: int = q

    @property
    def p(self) -> int:
        return self._p

    @property
    def q(self) -> int:
        return self._q

    def __repr__(self) -> str:
        return f"GoldenNum({self._p}, {self._q})"

    def __str__(self) -> str:
        return f"{self._p}{self._q:+}φ"

    @classmethod
    def from_int(cls, x: int) -> GoldenNum:
        return cls(x, 0)

    def __hash__(self) -> int:
        return hash((self._p, self._q))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._q == 0 and self._p == other
        if isinstance(other, GoldenNum):
            return self._p == other.p and self._q == other.q
        return NotImplemented

    def __lt__(self, other: int | GoldenNum) -> bool:
        if isinstance(other, int):
            other = self.from_int(other)
        if not isinstance(other, GoldenNum):
            return NotImplemented
        return sign(self - other) < 0

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    def __add__(self, other: int | GoldenNum) -> GoldenNum:
        if isinstance(other, int):
            return self.__class__(self._p + other, self._q)
        if isinstance(other, GoldenNum):
            return self.__class__(self._p + other.p, self._q + other.q)
        return NotImplemented

    def __radd__(self, other: int) -> GoldenNum:
        return self + other

    def __sub__(self, other: int | GoldenNum) -> GoldenNum:
        return self + (-other)

    def __rsub__(self, other: int) -> GoldenNum:
        return (-self) + other

    def __neg__(self) -> GoldenNum:
        return self.__class__(-self._p, -self._q)

    def __mul__(self, other: int | GoldenNum) -> GoldenNum:
        if isinstance(other, int):
            return self.__class__(self._p * other, self._q * other)
        if isinstance(other, GoldenNum):
            p, q, r, s = self._p, self._q, other.p, other.q
            return self.__class__(p * r + q * s, p * s + q * r + q * s)
        return NotImplemented

    def __rmul__(self, other: int) -> GoldenNum:
        return self * other

    def conjugate(self) -> GoldenNum:
        return self.__class__(self._p + self._q, -self._q)

    def norm(self) -> int:
        """a·conjugate(a), always a rational integer."""
        return self._p * self._p + self._p * self._q - self._q * self._q

    def inverse(self) -> GoldenNum:
        n = self.norm()
        if n == 1:
            return self.conjugate()
        if n == -1:
            return -self.conjugate()
        raise ZeroDivisionError(f"{self!r} is not a unit of Z[φ]")

    def __pow__(self, exponent: int) -> GoldenNum:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.__class__(1, 0)
        base = self
        while exponent > 0:
            if exponent & 1:
                result *= base
            base *= base
            exponent >>= 1
        return result

    def __floor__(self) -> int:
        # p + qφ = ((2p + q) + q√5) / 2
        return (2 * self._p + self._q + floor_sqrt5_times(self._q)) // 2

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.mpf(self._p) + self._q * mpmath.phi


ZERO = GoldenNum(0, 0)
ONE = GoldenNum(1, 0)
PHI = GoldenNum(0, 1)
PSI = GoldenNum(1, -1)
INV_PHI = GoldenNum(-1, 1)
INV_PHI2 = GoldenNum(2, -1)
INV_PHI3 = GoldenNum(-3, 2)
INV_PHI4 = GoldenNum(5, -3)
INV_PHI5 = GoldenNum(-8, 5)


def add(a: GoldenNum, b: GoldenNum) -> GoldenNum:
    return a + b


def mul(a: GoldenNum, b: GoldenNum) -> GoldenNum:
    return a * b


def neg(a: GoldenNum) -> GoldenNum:
    return -a


def conjugate(a: GoldenNum) -> GoldenNum:
    return a.conjugate()


def sign(a: GoldenNum) -> int:
    """Exact sign (-1, 0, 1) of p + qφ, written as ((2p + q) + q√5) / 2."""
    return _sign_a_plus_b_sqrt5(2 * a.p + a.q, a.q)


def compare_fraction(a: GoldenNum, r: Fraction) -> int:
    """Exact sign of a − r for a rational r."""
    return sign(a * r.denominator - r.numerator)


def floor_mul_psi(n: int) -> int:
    """⌊nψ⌋ for n ≥ 0, via the integer square root of 5n²."""
    if n < 0:
        raise ValueError(f"floor_mul_psi expects n >= 0, got {n}")
    # nψ = (n − n√5)/2 and ⌊n√5⌋ = isqrt(5n²)
    return (n - isqrt(5 * n * n) - 1) // 2 if n else 0


def to_decimal(a: GoldenNum, digits: int) -> str:
    """Correctly rounded fixed-point rendering of p + qφ with `digits` places."""
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    scale = 10 ** digits
    # round(v·10^d) = ⌊(2v·10^d + 1) / 2⌋ with 2v = (2p + q) + q√5
    scaled = ((2 * a.p + a.q) * scale + 1 + floor_sqrt5_times(a.q * scale)) // 2
    sign_str = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign_str}{body[:-digits]}.{body[-digits:]}"
