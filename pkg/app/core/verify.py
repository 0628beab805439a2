"""Cross-path consistency sweeps.

Per-n checks run over contiguous chunks of [0, max_n] in worker processes and
are merged in chunk order, so the report is identical for any worker count.
"""
from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.asymptotics import cdf_bounds, word_count
from app.core.counting import batch_r, r_bruteforce, r_pair, r_values
from app.core.dynamics import cocycle_r, g_index, h_eval, in_strip, orbit, orbit_point, rotate, word_point
from app.core.errors import PartitionError
from app.core.golden import INV_PHI2, INV_PHI3, INV_PHI4, INV_PHI5, PHI, ZERO, GoldenNum
from app.core.staircase import Interval, Patch, Window, level_set, longest_nondecreasing_run, patch_hits, patch_hits_direct
from app.core.zeckendorf import decode, encode, fib, is_zeckendorf
from app.models.partition import CheckResult, VerifyReport

logger = logging.getLogger(__name__)

KNOWN_PREFIX = (1, 1, 1, 2, 1, 2, 2, 1, 3, 2, 2, 3, 1, 3)

PER_N_CHECKS = (
    "triple_path",
    "pair_consistency",
    "cocycle_identity",
    "orbit_structure",
    "zeckendorf_round_trip",
)

_CHUNK = 2_000


@dataclass
class ChunkOutcome:
    lo: int
    hi: int
    mismatches: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PER_N_CHECKS, 0))
    first: dict[str, str] = field(default_factory=dict)

    def fail(self, check: str, message: str) -> None:
        self.mismatches[check] += 1
        self.first.setdefault(check, message)


def scan_chunk(lo: int, hi: int, oracle_bound: int) -> ChunkOutcome:
    """All per-n checks for lo ≤ n ≤ hi."""
    out = ChunkOutcome(lo, hi)
    values = r_values(hi + 1, lo)  # one past hi for the ratio checks
    prev = r_pair(lo)[1]
    points = list(orbit(hi + 1, lo))
    for i, n in enumerate(range(lo, hi + 1)):
        rn = values[i]
        try:
            pair = r_pair(n)
            if pair[0] != rn:
                out.fail("triple_path", f"matrix R({n}) = {pair[0]} but stream gives {rn}")
            if n <= oracle_bound:
                oracle = r_bruteforce(n, bound=oracle_bound)
                if oracle != rn:
                    out.fail("triple_path", f"oracle R({n}) = {oracle} but stream gives {rn}")
            if n and pair[1] != prev:
                out.fail("pair_consistency", f"r_pair({n}) reports R({n - 1}) = {pair[1]}, expected {prev}")
        except PartitionError as exc:
            out.fail("triple_path", f"n = {n}: {exc}")

        pt, nxt = points[i], points[i + 1]
        try:
            ratio = h_eval(pt.y)
            if ratio != Fraction(values[i + 1], rn):
                out.fail("cocycle_identity", f"h(y_{n}) = {ratio} but R({n + 1})/R({n}) = {values[i + 1]}/{rn}")
        except PartitionError as exc:
            out.fail("cocycle_identity", f"n = {n}: {exc}")

        if not in_strip(pt.y):
            out.fail("orbit_structure", f"y_{n} = {pt.y} left the strip")
        elif pt != orbit_point(n):
            out.fail("orbit_structure", f"successor walk and direct formula disagree at n = {n}")
        elif g_index(nxt.x, nxt.y) != g_index(pt.x, pt.y) + 1:
            out.fail("orbit_structure", f"g∘s ≠ g + 1 at n = {n}")
        elif rotate(pt.y) != nxt.y:
            out.fail("orbit_structure", f"T(y_{n}) ≠ y_{n + 1}")

        word = encode(n)
        if decode(word) != n or not is_zeckendorf(word.bits):
            out.fail("zeckendorf_round_trip", f"encode/decode fails at n = {n} ({word})")
        elif word_point(word.bits) != pt:
            out.fail("zeckendorf_round_trip", f"word_point({word}) ≠ orbit_point({n})")
        prev = rn
    logger.debug("Chunk %d..%d scanned", lo, hi)
    return out


def _chunks(max_n: int, size: int = _CHUNK) -> list[tuple[int, int]]:
    return [(lo, min(lo + size - 1, max_n)) for lo in range(0, max_n + 1, size)]


def _timed(name: str, check: Callable[[], tuple[bool, str]]) -> CheckResult:
    started = time.perf_counter()
    try:
        passed, detail = check()
    except PartitionError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    result = CheckResult(name=name, passed=passed, detail=detail, elapsed_seconds=time.perf_counter() - started)
    if passed:
        logger.info("Check %s passed in %.2fs", name, result.elapsed_seconds)
    else:
        logger.warning("Check %s FAILED: %s", name, detail)
    return result


def check_sequence_prefix() -> tuple[bool, str]:
    got = tuple(r_values(len(KNOWN_PREFIX) - 1))
    return got == KNOWN_PREFIX, f"R(0..13) = {','.join(map(str, got))}"


def check_level_set_one() -> tuple[bool, str]:
    expected = Window.of((Interval(-INV_PHI4, ZERO), Interval(INV_PHI2, INV_PHI2 + INV_PHI5)))
    window = level_set(1)
    if window != expected:
        return False, f"level_set(1) = {window.intervals}"
    if window.length() != INV_PHI3:
        return False, f"density of (1) is {window.length()}, expected 1/φ³"
    return True, "level_set(1) = [−1/φ⁴, 0] ∪ [1/φ², 1/φ² + 1/φ⁵], density 1/φ³"


def check_window_duality(max_n: int) -> tuple[bool, str]:
    for text in ("1", "1,1"):
        patch = Patch.parse(text)
        by_window = patch_hits(patch, max_n)
        by_scan = patch_hits_direct(patch, max_n)
        if by_window != by_scan:
            extra = sorted(set(by_window) ^ set(by_scan))[:5]
            return False, f"patch ({text}): window and scan differ at {extra}"
    return True, f"patches (1) and (1,1) agree for n ≤ {max_n}"


def check_run_scan(max_n: int) -> tuple[bool, str]:
    stats = longest_nondecreasing_run(max(max_n, 3))
    passed = stats.k_max == 3 and stats.witnesses == [0]
    return passed, f"weak k_max = {stats.k_max} at {stats.witnesses[:5]}; strict k_max = {stats.strict_k_max}"


def check_cocycle_product(max_n: int) -> tuple[bool, str]:
    product = cocycle_r(max_n)
    expected = r_pair(max_n)[0]
    return product == expected, f"product of h over the orbit of 0 to {max_n} is {product}, R({max_n}) = {expected}"


def cdf_grid(grid: int) -> list[Fraction]:
    """grid + 1 evenly spaced rationals from 0 up to 1.61803398874 < φ."""
    return [Fraction(161803398874 * j, 100000000000 * grid) for j in range(grid + 1)]


def check_cdf_sandwich(depth: int = 12, grid: int = 40) -> tuple[bool, str]:
    k_full = min(depth, 16)
    total = word_count(Fraction(2), k_full)
    if total != 2 ** k_full:
        return False, f"full word count at k = {k_full} is {total}, expected 2^{k_full}"
    last_lower = last_upper = -1
    for x in cdf_grid(grid):
        b = cdf_bounds(x, depth)
        if b.lower_num > b.upper_num:
            return False, f"lower > upper at x = {x}"
        if b.lower_num < last_lower or b.upper_num < last_upper:
            return False, f"bounds decrease at x = {x}"
        last_lower, last_upper = b.lower_num, b.upper_num
    return True, f"{grid + 1} grid points at depth {depth} ordered and monotone"


def check_conjugation(samples: int = 1000, seed: int = 7) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(samples):
        a = GoldenNum(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        b = GoldenNum(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        if (a + b).conjugate() != a.conjugate() + b.conjugate():
            return False, f"conjugate does not respect {a} + {b}"
        if (a * b).conjugate() != a.conjugate() * b.conjugate():
            return False, f"conjugate does not respect {a} · {b}"
    if PHI.conjugate() * PHI != -1:
        return False, "φ·ψ ≠ −1"
    return True, f"{samples} random pairs"


def _merge(outcomes: list[ChunkOutcome], elapsed: float) -> list[CheckResult]:
    results = []
    for name in PER_N_CHECKS:
        count = sum(o.mismatches[name] for o in outcomes)
        first = next((o.first[name] for o in outcomes if name in o.first), "")
        detail = f"{count} mismatch(es); first: {first}" if count else "zero mismatches"
        results.append(CheckResult(name=name, passed=not count, detail=detail, elapsed_seconds=elapsed))
    return results


def run_verification(max_n: int, jobs: int = 1) -> VerifyReport:
    if max_n < 13:
        raise ValueError(f"verify needs max_n >= 13, got {max_n}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    from app.dependencies import get_settings

    oracle_bound = get_settings().ORACLE_BOUND
    logger.info("Verifying n ≤ %d with %d worker(s)", max_n, jobs)

    checks = [_timed("sequence_prefix", check_sequence_prefix)]

    started = time.perf_counter()
    spans = _chunks(max_n)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(scan_chunk, *zip(*spans), [oracle_bound] * len(spans)))
    else:
        outcomes = [scan_chunk(lo, hi, oracle_bound) for lo, hi in spans]
    checks.extend(_merge(outcomes, time.perf_counter() - started))

    checks.append(_timed("cocycle_product", lambda: check_cocycle_product(max_n)))
    checks.append(_timed("level_set_one", check_level_set_one))
    checks.append(_timed("window_scan_duality", lambda: check_window_duality(max_n)))
    checks.append(_timed("nondecreasing_runs", lambda: check_run_scan(max_n)))
    checks.append(_timed("cdf_sandwich", check_cdf_sandwich))
    checks.append(_timed("conjugation", check_conjugation))

    report = VerifyReport(max_n=max_n, jobs=jobs, checks=checks)
    logger.info("Verification %s", "passed" if report.passed else "FAILED")
    return report
