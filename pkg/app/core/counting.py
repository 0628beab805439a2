"""R(n) through the 3×3 transfer matrices, a streaming enumerator, partial sums
A(H) and a brute-force oracle.

Row vectors start at (1 0 0) and are multiplied on the right by A_{b₁}…A_{b_k}
for the Zeckendorf word b₁…b_k of n. Afterwards row[0] = R(n) and
row[1] + row[2] = R(n−1).
"""
from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from typing import Optional

from app.core.errors import OracleBoundExceeded, SupportViolation
from app.core.zeckendorf import ZeckWord, encode, fib, fib_index_at_most

logger = logging.getLogger(__name__)

Row = tuple[int, int, int]
CountMatrix = tuple[Row, Row, Row]

A1: CountMatrix = ((1, 0, 1), (0, 0, 1), (0, 0, 0))
A0: CountMatrix = ((1, 0, 0), (1, 0, 1), (0, 1, 0))
MATRICES: dict[int, CountMatrix] = {0: A0, 1: A1}

START: Row = (1, 0, 0)


def transfer(row: Row, bit: int) -> Row:
    """row · A_bit as a plain vector–matrix product."""
    m = MATRICES[bit]
    return tuple(sum(row[i] * m[i][j] for i in range(3)) for j in range(3))  # type: ignore[return-value]


@dataclass(frozen=True, slots=True)
class CountState:
    row: Row = START
    depth: int = 0

    def advance(self, bit: int) -> CountState:
        a, b, c = self.row
        # (a b c)·A₁ = (a, 0, a + b); (a b c)·A₀ = (a + b, c, b)
        row = (a, 0, a + b) if bit else (a + b, c, b)
        if row[1] and row[2]:
            raise SupportViolation(f"row {row} has two nonzero shifted entries at depth {self.depth + 1}")
        return CountState(row, self.depth + 1)

    @property
    def r(self) -> int:
        return self.row[0]

    @property
    def r_prev(self) -> int:
        return self.row[1] + self.row[2]


def run_word(bits: Sequence[int]) -> CountState:
    state = CountState()
    for bit in bits:
        state = state.advance(bit)
    return state


def r_word(bits: Sequence[int]) -> Row:
    """(1 0 0)·A_{a₁}…A_{a_k} for an arbitrary word (no support check)."""
    row = START
    for bit in bits:
        row = transfer(row, bit)
    return row


def r_pair(n: int) -> tuple[int, Optional[int]]:
    """(R(n), R(n−1)); R(−1) is reported as None."""
    if n < 0:
        raise ValueError(f"r_pair expects n >= 0, got {n}")
    state = run_word(encode(n).bits)
    return state.r, (state.r_prev if n else None)


def r(n: int) -> int:
    return r_pair(n)[0]


def r_bruteforce(n: int, bound: Optional[int] = None) -> int:
    """Count subsets of {F₂, F₃, …} summing to n by largest-first backtracking."""
    if bound is None:
        from app.dependencies import get_settings

        bound = get_settings().ORACLE_BOUND
    if n < 0:
        raise ValueError(f"r_bruteforce expects n >= 0, got {n}")
    if n > bound:
        raise OracleBoundExceeded(f"n = {n} is above the oracle bound {bound}")
    if n == 0:
        return 1
    parts = [fib(k) for k in range(2, fib_index_at_most(n) + 1)]
    below = [0, *accumulate(parts)]  # below[i] = sum of the i smallest parts

    def count(i: int, rest: int) -> int:
        # parts[0..i) are still available
        if rest == 0:
            return 1
        if i == 0 or below[i] < rest:
            return 0
        part = parts[i - 1]
        total = count(i - 1, rest)
        if part <= rest:
            total += count(i - 1, rest - part)
        return total

    return count(len(parts), n)


def _next_word(bits: list[int]) -> int:
    """Advance a Zeckendorf word of fixed length to its numeric successor.

    Returns the first changed position, or -1 when the block is exhausted.
    """
    for j in range(len(bits) - 1, 0, -1):
        if bits[j] == 0 and bits[j - 1] == 0:
            bits[j] = 1
            for t in range(j + 1, len(bits)):
                bits[t] = 0
            return j
    return -1


def batch_r(limit: int, start: int = 0) -> Iterator[tuple[int, int]]:
    """Stream (n, R(n)) for start ≤ n ≤ limit in increasing n.

    Walks the no-adjacent-1s words of each length in numeric order, keeping the
    count rows of every prefix on a stack so each step only recomputes the
    changed suffix.
    """
    if start < 0:
        raise ValueError(f"batch_r expects start >= 0, got {start}")
    n = start
    if n == 0:
        if limit >= 0:
            yield 0, 1
        n = 1
    while n <= limit:
        bits = list(encode(n).bits)
        stack = [CountState()]
        for bit in bits:
            stack.append(stack[-1].advance(bit))
        while True:
            yield n, stack[-1].r
            n += 1
            if n > limit:
                return
            j = _next_word(bits)
            if j < 0:
                break  # next length starts at a Fibonacci number
            del stack[j + 1:]
            for bit in bits[j:]:
                stack.append(stack[-1].advance(bit))


def r_values(limit: int, start: int = 0) -> list[int]:
    return [value for _, value in batch_r(limit, start)]


def a_of(h: int) -> int:
    """A(H) = R(0) + … + R(H)."""
    if h < 0:
        raise ValueError(f"a_of expects H >= 0, got {h}")
    return sum(value for _, value in batch_r(h))


@dataclass(frozen=True)
class PartialSums:
    """Immutable snapshot of R(0..limit) and A(0..limit)."""

    values: tuple[int, ...]
    sums: tuple[int, ...]

    @property
    def limit(self) -> int:
        return len(self.values) - 1

    def r(self, n: int) -> int:
        return self.values[n]

    def a(self, h: int) -> int:
        """A(H), with A(−1) = 0."""
        if h < 0:
            return 0
        if h > self.limit:
            raise IndexError(f"A({h}) requested but partial sums only reach {self.limit}")
        return self.sums[h]


@lru_cache(maxsize=4)
def _partial_sums_exact(limit: int) -> PartialSums:
    logger.info("Building partial sums A(0..%d)", limit)
    values = tuple(r_values(limit))
    return PartialSums(values=values, sums=tuple(accumulate(values)))


def partial_sums(limit: int) -> PartialSums:
    """Cached snapshot covering at least 0..limit (rounded up to F_k − 1)."""
    k = 2
    while fib(k) - 1 < limit:
        k += 1
    return _partial_sums_exact(max(fib(k) - 1, 1))


def projective(row: Row) -> tuple[Fraction, Fraction]:
    a, b, c = row
    return Fraction(b, a), Fraction(c, a)


def e_map(point: tuple[Fraction, Fraction], bit: int) -> tuple[Fraction, Fraction]:
    """Projective action of A_bit: π(row·A_bit) = e_bit(π(row))."""
    x, y = point
    if bit:
        return Fraction(0), 1 + x
    return y / (1 + x), x / (1 + x)


def zeckendorf_state(n: int) -> tuple[ZeckWord, CountState]:
    word = encode(n)
    return word, run_word(word.bits)
