"""Growth of the partial sums A(H) and the Bernoulli-convolution CDF G_φ.

A(H)/H^α, α = log 2/log φ, oscillates log-periodically. The profile is tied
to G_φ through the lattice points x_n: a 0/1 word a of length k satisfies
Σ aᵢφ^{k+2−i} = x_m with m the word's Fibonacci value, and x_n increases with
n, so counting words below a threshold reduces to one binary search plus
partial sums of R.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Optional

import mpmath

from app.core.counting import PartialSums, partial_sums
from app.core.dynamics import orbit_point
from app.core.errors import OutOfDomain
from app.core.golden import PHI, ZERO, GoldenNum, compare_fraction
from app.core.zeckendorf import fib
from app.models.partition import CdfBound, Extremes, GrowthSample, ProfilePoint

logger = logging.getLogger(__name__)

_ALPHA_DIGITS = 50

with mpmath.workdps(_ALPHA_DIGITS):
    ALPHA_MP = mpmath.log(2) / mpmath.log(mpmath.phi)
    # (φ√5)^α = 2·5^{α/2}
    PROFILE_CONSTANT_MP = (mpmath.phi * mpmath.sqrt(5)) ** ALPHA_MP

ALPHA = float(ALPHA_MP)
PROFILE_CONSTANT = float(PROFILE_CONSTANT_MP)


def _ratio(sums: PartialSums, h: int) -> float:
    return sums.a(h) / math.exp(ALPHA * math.log(h))


def growth_at(h: int, sums: Optional[PartialSums] = None) -> float:
    """A(H) / H^α."""
    if h < 1:
        raise ValueError(f"growth_at expects H >= 1, got {h}")
    return _ratio(sums or partial_sums(h), h)


def growth_at_precise(h: int, digits: int = 30, sums: Optional[PartialSums] = None) -> mpmath.mpf:
    """Same ratio evaluated with mpmath, for checking the float path."""
    sums = sums or partial_sums(h)
    with mpmath.workdps(digits):
        return mpmath.mpf(sums.a(h)) / mpmath.power(h, ALPHA_MP)


def growth_curve(h_min: int, h_max: int) -> list[GrowthSample]:
    if not 1 <= h_min <= h_max:
        raise ValueError(f"growth_curve needs 1 <= from <= to, got {h_min}..{h_max}")
    sums = partial_sums(h_max)
    return [
        GrowthSample(H=h, logH=math.log(h), ratio=_ratio(sums, h))
        for h in range(h_min, h_max + 1)
    ]


def extremes(h_min: int, h_max: int) -> Extremes:
    if not 1 <= h_min <= h_max:
        raise ValueError(f"extremes needs 1 <= from <= to, got {h_min}..{h_max}")
    sums = partial_sums(h_max)
    lo = hi = _ratio(sums, h_min)
    argmin = argmax = h_min
    for h in range(h_min + 1, h_max + 1):
        value = _ratio(sums, h)
        if value < lo:
            lo, argmin = value, h
        elif value > hi:
            hi, argmax = value, h
    logger.info("Growth extremes on [%d, %d]: min %.6f at %d, max %.6f at %d", h_min, h_max, lo, argmin, hi, argmax)
    return Extremes(h_min=h_min, h_max=h_max, min_ratio=lo, argmin=argmin, max_ratio=hi, argmax=argmax)


def word_count(x: Fraction, k: int, shift: GoldenNum = ZERO, sums: Optional[PartialSums] = None) -> int:
    """#{a ∈ {0,1}^k : Σ aᵢφ^{−i} + shift ≤ x}."""
    top = fib(k + 3) - 2  # largest value of a length-k word
    scale = PHI ** (-(k + 2))

    def below(n: int) -> bool:
        return compare_fraction(orbit_point(n).x * scale + shift, x) <= 0

    if not below(0):
        return 0
    lo, hi = 0, top
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if below(mid):
            lo = mid
        else:
            hi = mid - 1
    h = lo
    sums = sums or partial_sums(fib(k + 2) - 1)
    if h < fib(k + 2):
        return sums.a(h)
    # values at or above F_{k+2} are counted through the complement word
    return sums.a(fib(k + 2) - 1) + sums.a(fib(k + 1) - 2) - sums.a(top - h - 1)


def _as_point(x: Fraction | int | str) -> Fraction:
    value = Fraction(x)
    if value < 0 or compare_fraction(PHI, value) < 0:
        raise OutOfDomain(f"cdf_bounds expects x in [0, φ], got {value}")
    return value


def cdf_bounds(x: Fraction | int | str, k: int, sums: Optional[PartialSums] = None) -> CdfBound:
    """Dyadic sandwich of G_φ(x) from the length-k digit prefixes."""
    if k < 2:
        raise ValueError(f"cdf_bounds expects k >= 2, got {k}")
    value = _as_point(x)
    sums = sums or partial_sums(fib(k + 2) - 1)
    # the tail Σ_{i>k} aᵢφ^{−i} lies in [0, φ^{1−k}]
    upper = word_count(value, k, sums=sums)
    lower = word_count(value, k, shift=PHI ** (1 - k), sums=sums)
    return CdfBound(x=str(value), k=k, lower_num=lower, upper_num=upper)


def profile_value(gamma: float, k: int, sums: Optional[PartialSums] = None) -> float:
    """(φ√5)^α · G_φ(γ/φ³) / γ^α, with G_φ taken at the midpoint of its depth-k bounds."""
    with mpmath.workdps(_ALPHA_DIGITS):
        point = mpmath.mpf(gamma) / mpmath.phi ** 3
        x = Fraction(mpmath.nstr(point, 40, strip_zeros=False))
    g = cdf_bounds(x, k, sums).midpoint
    return PROFILE_CONSTANT * g / gamma ** ALPHA


def limit_profile(samples: int, k: Optional[int] = None) -> list[ProfilePoint]:
    """The predicted log-periodic limit of A(H)/H^α on an even γ grid over [1, φ]."""
    if samples < 2:
        raise ValueError(f"limit_profile expects samples >= 2, got {samples}")
    if k is None:
        from app.dependencies import get_settings

        k = get_settings().CDF_DEPTH
    sums = partial_sums(fib(k + 2) - 1)
    phi = float(mpmath.phi)
    grid = [1 + j * (phi - 1) / (samples - 1) for j in range(samples)]
    logger.info("Limit profile: %d samples at depth %d", samples, k)
    return [ProfilePoint(gamma=g, value=profile_value(g, k, sums)) for g in grid]


def log_periodic_gap(gamma: float, k: int, depth: Optional[int] = None) -> float:
    """|A(H)/H^α − profile(γ)| at H = ⌊γ·F_{k−1}⌋."""
    h = math.floor(gamma * fib(k - 1))
    depth = depth or k
    sums = partial_sums(max(h, fib(depth + 2) - 1))
    return abs(_ratio(sums, h) - profile_value(gamma, depth, sums))
