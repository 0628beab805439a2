"""Plateaus of h, patch windows and their cut-and-project hit sets.

h is built from three affine pieces around the core region C = (−1/φ², 1/φ³):
on L = (−1/φ², −1/φ⁴) it is 1 + h(−φy), on [−1/φ⁴, 0] it is 1, on (0, 1/φ³)
it is h(u(y))/(1 + h(u(y))), and on U = (1/φ³, 1/φ) it is h(u(y)), with
u(y) = −φy + 1/φ. Level sets therefore come from the base plateau by pulling
back along u⁻¹(z) = (1/φ − z)/φ and z ↦ −z/φ, and every positive rational has
exactly two plateau intervals: one inside C and its mirror inside U.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from app.core.counting import r_values
from app.core.dynamics import LOWER, ROTATION, UPPER, Ratio, orbit
from app.core.errors import DepthExceeded, NonPositiveRatio
from app.core.golden import INV_PHI, INV_PHI4, ZERO, GoldenNum, to_decimal
from app.models.partition import RunStatistics

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: GoldenNum
    hi: GoldenNum
    lo_closed: bool = True
    hi_closed: bool = True

    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, y: GoldenNum) -> bool:
        above = self.lo < y or (self.lo_closed and y == self.lo)
        below = y < self.hi or (self.hi_closed and y == self.hi)
        return above and below

    def length(self) -> GoldenNum:
        return self.hi - self.lo

    def affine(self, scale: GoldenNum, shift: GoldenNum) -> Interval:
        """Image under y ↦ scale·y + shift; a negative scale swaps the ends."""
        a = self.lo * scale + shift
        b = self.hi * scale + shift
        if scale < ZERO:
            return Interval(b, a, self.hi_closed, self.lo_closed)
        return Interval(a, b, self.lo_closed, self.hi_closed)

    def shift(self, c: GoldenNum | int) -> Interval:
        return Interval(self.lo + c, self.hi + c, self.lo_closed, self.hi_closed)

    def intersect(self, other: Interval) -> Interval:
        if self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        elif other.lo < self.lo:
            lo, lo_closed = self.lo, self.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif other.hi < self.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lo_closed, hi_closed)


@dataclass(frozen=True)
class Window:
    intervals: tuple[Interval, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, intervals: Iterable[Interval]) -> Window:
        return cls(tuple(intervals)).normalized()

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, y: GoldenNum) -> bool:
        return any(iv.contains(y) for iv in self.intervals)

    def length(self) -> GoldenNum:
        total = ZERO
        for iv in self.intervals:
            total = total + iv.length()
        return total

    def normalized(self) -> Window:
        """Drop empty pieces, sort, and merge pieces that overlap or touch."""
        pieces = sorted(
            (iv for iv in self.intervals if not iv.is_empty()),
            key=lambda iv: (iv.lo, not iv.lo_closed),
        )
        merged: list[Interval] = []
        for iv in pieces:
            if merged:
                last = merged[-1]
                touching = iv.lo < last.hi or (iv.lo == last.hi and (last.hi_closed or iv.lo_closed))
                if touching:
                    if last.hi < iv.hi:
                        merged[-1] = Interval(last.lo, iv.hi, last.lo_closed, iv.hi_closed)
                    elif last.hi == iv.hi:
                        merged[-1] = Interval(last.lo, last.hi, last.lo_closed, last.hi_closed or iv.hi_closed)
                    continue
            merged.append(iv)
        return Window(tuple(merged))

    def intersect(self, other: Window) -> Window:
        return Window.of(a.intersect(b) for a in self.intervals for b in other.intervals)

    def rotate_preimage(self, steps: int) -> Window:
        """{y : Tˢ(y) ∈ W} for s = steps ≥ 0."""
        shift = ROTATION * (-steps)
        pieces: list[Interval] = []
        for iv in self.intervals:
            moved = iv.shift(shift)
            # wrap the left end back into [−1/φ², 1/φ)
            moved = moved.shift(-_floor_from_lower(moved.lo))
            if moved.hi < UPPER or (moved.hi == UPPER and not moved.hi_closed):
                pieces.append(moved)
            else:
                pieces.append(Interval(moved.lo, UPPER, moved.lo_closed, False))
                pieces.append(Interval(LOWER, moved.hi - 1, True, moved.hi_closed))
        return Window.of(pieces)


def _floor_from_lower(y: GoldenNum) -> int:
    """Integer m with y − m ∈ [−1/φ², 1/φ)."""
    return math.floor(y - LOWER)


BASE_PLATEAU = Interval(-INV_PHI4, ZERO)


def _mirror(iv: Interval) -> Interval:
    # u⁻¹(z) = (1/φ − z)/φ = −z/φ + 1/φ²
    return iv.affine(-INV_PHI, INV_PHI * INV_PHI)


def _lift(iv: Interval) -> Interval:
    # core(q + 1) = −u⁻¹(core(q))/φ
    return _mirror(iv).affine(-INV_PHI, ZERO)


def _sink(iv: Interval) -> Interval:
    # core(q/(1 + q)) = u⁻¹(u⁻¹(core(q)))
    return _mirror(_mirror(iv))


def _as_ratio(q: Fraction | int | str) -> Fraction:
    value = Fraction(q)
    if value <= 0:
        raise NonPositiveRatio(f"level sets need a positive ratio, got {value}")
    return value


def core_plateau(q: Fraction | int | str, max_steps: Optional[int] = None) -> Interval:
    """The plateau of value q inside (−1/φ², 1/φ³), by Stern–Brocot descent to 1."""
    if max_steps is None:
        from app.dependencies import get_settings

        max_steps = get_settings().LEVEL_SET_MAX_STEPS
    value = _as_ratio(q)
    path: list[bool] = []  # True: came down from value − 1
    while value != 1:
        if len(path) >= max_steps:
            raise DepthExceeded(f"Stern–Brocot descent of {q} exceeds {max_steps} steps")
        if value > 1:
            path.append(True)
            value -= 1
        else:
            path.append(False)
            value = value / (1 - value)
    iv = BASE_PLATEAU
    for from_minus_one in reversed(path):
        iv = _lift(iv) if from_minus_one else _sink(iv)
    return iv


def level_set(q: Fraction | int | str, max_steps: Optional[int] = None) -> Window:
    """{y : h(y) = q}."""
    core = core_plateau(q, max_steps)
    return Window.of((core, _mirror(core)))


def staircase_table(depth: int) -> list[tuple[Interval, Ratio]]:
    """All plateaus whose value sits within `depth` Stern–Brocot steps of 1, sorted by position."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    rows: list[tuple[Interval, Ratio]] = []
    frontier = [(Fraction(1), BASE_PLATEAU)]
    for level in range(depth + 1):
        nxt: list[tuple[Fraction, Interval]] = []
        for value, core in frontier:
            rows.append((core, value))
            rows.append((_mirror(core), value))
            if level < depth:
                nxt.append((value + 1, _lift(core)))
                nxt.append((value / (1 + value), _sink(core)))
        frontier = nxt
    rows.sort(key=lambda row: row[0].lo)
    return rows


def table_length(rows: Sequence[tuple[Interval, Ratio]]) -> GoldenNum:
    total = ZERO
    for iv, _ in rows:
        total = total + iv.length()
    return total


@dataclass(frozen=True)
class Patch:
    ratios: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.ratios:
            raise ValueError("a patch needs at least one ratio")
        for p in self.ratios:
            if p <= 0:
                raise NonPositiveRatio(f"patch ratios must be positive, got {p}")

    @classmethod
    def parse(cls, text: str) -> Patch:
        """'1,3/2,2' → (1, 3/2, 2)."""
        try:
            ratios = tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse patch {text!r}: {exc}") from exc
        return cls(ratios)

    def steps(self) -> list[Fraction]:
        """Successive ratios R(n+i)/R(n+i−1)."""
        out = [self.ratios[0]]
        out.extend(b / a for a, b in zip(self.ratios, self.ratios[1:]))
        return out


def patch_window(patch: Patch) -> Window:
    window = Window()
    for i, step in enumerate(patch.steps()):
        level = level_set(step)
        window = level if i == 0 else window.intersect(level.rotate_preimage(i))
        if window.is_empty():
            break
    return window


def patch_hits(patch: Patch, limit: int, start: int = 0) -> list[int]:
    """All start ≤ n ≤ limit whose orbit point lies in the patch window."""
    window = patch_window(patch)
    if window.is_empty():
        return []
    return [pt.n for pt in orbit(limit, start) if window.contains(pt.y)]


def patch_hits_direct(patch: Patch, limit: int) -> list[int]:
    """Same set read straight off R: R(n + i) = p_i·R(n)."""
    k = len(patch.ratios)
    values = r_values(limit + k)
    return [
        n
        for n in range(limit + 1)
        if all(values[n + i] == p * values[n] for i, p in enumerate(patch.ratios, start=1))
    ]


def density(patch: Patch, digits: int = 12) -> tuple[GoldenNum, str]:
    exact = patch_window(patch).length()
    return exact, to_decimal(exact, digits)


def empirical_density(window: Window, limit: int) -> float:
    """Fraction of 0 ≤ n < limit with y_n in the window."""
    if limit <= 0:
        return 0.0
    hits = sum(1 for pt in orbit(limit - 1) if window.contains(pt.y))
    return hits / limit


def _runs(values: Sequence[int], strict: bool) -> list[int]:
    run = [0] * len(values)
    for n in range(len(values) - 2, -1, -1):
        ok = values[n] < values[n + 1] if strict else values[n] <= values[n + 1]
        run[n] = run[n + 1] + 1 if ok else 0
    return run


def longest_nondecreasing_run(limit: int) -> RunStatistics:
    """Longest k with R(n) ≤ … ≤ R(n+k) over n ≤ limit, plus the strict variant."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    values = r_values(limit + 4)
    weak = _runs(values, strict=False)[: limit + 1]
    strict = _runs(values, strict=True)[: limit + 1]
    k_max = max(weak)
    k_strict = max(strict)
    logger.info("Run scan to %d: weak k_max=%d, strict k_max=%d", limit, k_max, k_strict)
    return RunStatistics(
        limit=limit,
        k_max=k_max,
        witnesses=[n for n, k in enumerate(weak) if k == k_max],
        strict_k_max=k_strict,
        strict_witnesses=[n for n, k in enumerate(strict) if k == k_strict],
    )
