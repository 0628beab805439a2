"""Fibonacci numbers and Zeckendorf words.

A word b₁…b_k weights position i by F_{k+2−i}, so the parts range over
F₂ … F_{k+1} and F₁ is never used. n = 0 is the empty word.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

_FIBS: list[int] = [0, 1, 1]  # _FIBS[k] = F_k


def fib(k: int) -> int:
    if k < 1:
        raise ValueError(f"fib expects k >= 1, got {k}")
    while len(_FIBS) <= k:
        _FIBS.append(_FIBS[-1] + _FIBS[-2])
    return _FIBS[k]


def fib_index_at_most(n: int) -> int:
    """Largest k ≥ 2 with F_k ≤ n (n ≥ 1)."""
    k = 2
    while fib(k + 1) <= n:
        k += 1
    return k


def is_zeckendorf(bits: Sequence[int]) -> bool:
    if not bits:
        return True
    if bits[0] != 1:
        return False
    return all(not (a and b) for a, b in zip(bits, bits[1:]))


@dataclass(frozen=True, slots=True)
class ZeckWord:
    bits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not is_zeckendorf(self.bits):
            raise ValueError(f"not a Zeckendorf word: {''.join(map(str, self.bits))!r}")

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __len__(self) -> int:
        return len(self.bits)

    @classmethod
    def parse(cls, text: str) -> ZeckWord:
        return cls(_parse_bits(text))


def _parse_bits(text: str) -> tuple[int, ...]:
    if any(c not in "01" for c in text):
        raise ValueError(f"word must be a 0/1 string, got {text!r}")
    return tuple(int(c) for c in text)


def encode(n: int) -> ZeckWord:
    """Greedy Zeckendorf coding of n ≥ 0."""
    if n < 0:
        raise ValueError(f"encode expects n >= 0, got {n}")
    if n == 0:
        return ZeckWord()
    length = fib_index_at_most(n) - 1
    bits: list[int] = []
    rest = n
    for i in range(1, length + 1):
        weight = fib(length + 2 - i)
        if weight <= rest:
            bits.append(1)
            rest -= weight
        else:
            bits.append(0)
    return ZeckWord(tuple(bits))


def decode(word: ZeckWord | Sequence[int] | str) -> int:
    """Σ aᵢF_{k+2−i}; accepts any 0/1 word, not only Zeckendorf ones."""
    if isinstance(word, ZeckWord):
        bits: Sequence[int] = word.bits
    elif isinstance(word, str):
        bits = _parse_bits(word)
    else:
        bits = word
    k = len(bits)
    return sum(fib(k + 2 - i) for i, b in enumerate(bits, start=1) if b)


def blocks(word: ZeckWord) -> list[int]:
    """Exponents d₁…d_r of the block form 10^{d₁}…10^{d_r}."""
    text = str(word)
    if not text:
        return []
    return [len(chunk) for chunk in text.split("1")[1:]]
