"""Command-line front end: `fibpart <command> [options]`.

Data goes to standard output (or --out), diagnostics to standard error.
Exit codes: 0 success, 1 usage or domain error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel

from app.core import asymptotics, counting, dynamics, report_generator, staircase, verify, zeckendorf
from app.dependencies import configure_logging, get_settings
from app.models.partition import (
    GoldenValue,
    IntervalRow,
    OrbitRow,
    PatchResult,
    RRow,
    RunConfig,
    StaircaseRow,
    ZeckendorfRow,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


# ── Emission ──────────────────────────────────────────────────────────────────

def _flatten(data: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}_"))
        elif isinstance(value, list):
            flat[name] = " ".join(map(str, value))
        else:
            flat[name] = value
    return flat


def _round_floats(value: Any, precision: int) -> Any:
    if isinstance(value, float):
        return float(f"{value:.{precision}g}")
    if isinstance(value, dict):
        return {k: _round_floats(v, precision) for k, v in value.items()}
    if isinstance(value, list):
        return [_round_floats(v, precision) for v in value]
    return value


def _as_dict(row: BaseModel | dict[str, Any]) -> dict[str, Any]:
    return row.model_dump() if isinstance(row, BaseModel) else dict(row)


def render_rows(rows: Iterable[BaseModel | dict[str, Any]], fmt: str, precision: int) -> str:
    data = [_round_floats(_as_dict(row), precision) for row in rows]
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    flat = [_flatten(d) for d in data]
    if flat:
        writer = csv.DictWriter(buf, fieldnames=list(flat[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
    return buf.getvalue()


def render_object(row: BaseModel | dict[str, Any], fmt: str, precision: int) -> str:
    if fmt == "json":
        return json.dumps(_round_floats(_as_dict(row), precision), indent=2, ensure_ascii=False) + "\n"
    return render_rows([row], fmt, precision)


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8", newline="\n")
        logger.info("Wrote %s", out)


# ── Parallel range scans ──────────────────────────────────────────────────────

def _r_chunk(lo: int, hi: int) -> list[int]:
    return counting.r_values(hi, lo)


def r_range(start: int, stop: int, jobs: int = 1, chunk: int = 50_000) -> list[int]:
    """R(start..stop), split into contiguous chunks when jobs > 1 and merged in order."""
    if jobs <= 1 or stop - start < chunk:
        return counting.r_values(stop, start)
    spans = [(lo, min(lo + chunk - 1, stop)) for lo in range(start, stop + 1, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_r_chunk, *zip(*spans))
        return [value for part in parts for value in part]


# ── Commands ──────────────────────────────────────────────────────────────────

def _cmd_r(args: argparse.Namespace) -> int:
    value, prev = counting.r_pair(args.n)
    if args.format == "json":
        word = zeckendorf.encode(args.n)
        row = ZeckendorfRow(n=args.n, word=str(word), blocks=zeckendorf.blocks(word), r=value, r_prev=prev)
        _write(render_object(row, "json", args.precision), args.out)
    else:
        _write(f"{value}\n", args.out)
    return EXIT_OK


def _cmd_seq(args: argparse.Namespace) -> int:
    values = r_range(args.start, args.stop, args.jobs)
    rows = [RRow(n=n, R=v) for n, v in enumerate(values, start=args.start)]
    _write(render_rows(rows, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_zeckendorf(args: argparse.Namespace) -> int:
    word, state = counting.zeckendorf_state(args.n)
    row = ZeckendorfRow(
        n=args.n,
        word=str(word),
        blocks=zeckendorf.blocks(word),
        r=state.r,
        r_prev=state.r_prev if args.n else None,
    )
    _write(render_object(row, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_orbit(args: argparse.Namespace) -> int:
    stop = args.steps if args.steps is not None else args.stop
    if stop is None:
        raise UsageError("orbit: one of --to or --steps is required")
    rows = [OrbitRow.of(pt, dynamics.h_pair(pt.y), args.precision) for pt in dynamics.orbit(stop, args.start)]
    _write(render_rows(rows, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_staircase(args: argparse.Namespace) -> int:
    table = staircase.staircase_table(args.depth)
    covered = staircase.table_length(table)
    logger.info("Staircase depth %d: %d plateaus covering %s", args.depth, len(table),
                GoldenValue.of(covered, args.precision).dec)
    rows = [StaircaseRow.of(iv, value, args.precision) for iv, value in table]
    _write(render_rows(rows, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_window(args: argparse.Namespace) -> int:
    window = staircase.patch_window(staircase.Patch.parse(args.pattern))
    if window.is_empty():
        logger.warning("Patch %s never occurs: its window is empty", args.pattern)
    rows = [IntervalRow.of(iv, args.precision) for iv in window.intervals]
    _write(render_rows(rows, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_patch(args: argparse.Namespace) -> int:
    patch = staircase.Patch.parse(args.pattern)
    hits = staircase.patch_hits(patch, args.limit)
    if args.density:
        exact, _ = staircase.density(patch, args.precision)
        row = {
            "pattern": args.pattern,
            "limit": args.limit,
            "count": len(hits),
            "density": GoldenValue.of(exact, args.precision).model_dump(),
            "empirical": len(hits) / (args.limit + 1),
        }
        _write(render_object(row, args.format, args.precision), args.out)
    elif args.format == "json":
        _write(render_object(PatchResult(pattern=args.pattern, limit=args.limit, hits=hits), "json",
                             args.precision), args.out)
    else:
        _write(render_rows([{"n": n} for n in hits], "csv", args.precision), args.out)
    return EXIT_OK


def _cmd_growth(args: argparse.Namespace) -> int:
    if args.extremes:
        _write(render_object(asymptotics.extremes(args.start, args.stop), args.format, args.precision), args.out)
    else:
        _write(render_rows(asymptotics.growth_curve(args.start, args.stop), args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_cdf(args: argparse.Namespace) -> int:
    bound = asymptotics.cdf_bounds(args.x, args.depth)
    row = {**bound.model_dump(), "denominator": bound.denominator, "lower": bound.lower, "upper": bound.upper}
    _write(render_object(row, args.format, args.precision), args.out)
    return EXIT_OK


def _cmd_profile(args: argparse.Namespace) -> int:
    points = asymptotics.limit_profile(args.samples, args.depth)
    _write(render_rows(points, args.format, args.precision), args.out)
    return EXIT_OK


_UNSTABLE_FIELDS = {"jobs": True, "checks": {"__all__": {"elapsed_seconds"}}}


def _cmd_verify(args: argparse.Namespace) -> int:
    report = verify.run_verification(args.max, args.jobs)
    logger.info("Checks took %.2fs in total", sum(c.elapsed_seconds for c in report.checks))
    # stdout carries no timings or worker count so reruns compare byte for byte
    if args.format == "json":
        _write(report.model_dump_json(indent=2, exclude=_UNSTABLE_FIELDS) + "\n", args.out)
    else:
        _write(report_generator.render_report(report, timings=False), args.out)
    failure = report.first_failure
    if failure is not None:
        print(f"verify: {failure.name} failed: {failure.detail}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port)
    return EXIT_OK


# ── Parser ────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", type=Path, default=None, help="write to this file instead of stdout")
    common.add_argument("--precision", type=int, default=settings.DEFAULT_PRECISION,
                        help="decimal digits at the output boundary")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for range scans")

    parser = _Parser(prog="fibpart", description="Partitions of integers into distinct Fibonacci numbers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("r", parents=[common], help="R(n) through the transfer matrices")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_r)

    p = sub.add_parser("seq", parents=[common], help="R(n) over a range")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("zeckendorf", parents=[common], help="Zeckendorf word and count state of n")
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_zeckendorf)

    p = sub.add_parser("orbit", parents=[common], help="lattice points (x_n, y_n)")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="stop", type=int, default=None)
    p.add_argument("--steps", type=int, default=None, help="same as --to; --steps 2582 gives the full log h cloud")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("staircase", parents=[common], help="plateaus of h down to a Stern–Brocot depth")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=_cmd_staircase)

    p = sub.add_parser("window", parents=[common], help="acceptance window of a patch")
    p.add_argument("--pattern", required=True, help='ratios such as "1,1" or "2,3/2"')
    p.set_defaults(func=_cmd_window)

    p = sub.add_parser("patch", parents=[common], help="occurrences of a patch up to a limit")
    p.add_argument("--pattern", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--density", action="store_true", help="report the exact window length instead of hits")
    p.set_defaults(func=_cmd_patch)

    p = sub.add_parser("growth", parents=[common], help="A(H)/H^α over a range")
    p.add_argument("--from", dest="start", type=int, default=60)
    p.add_argument("--to", dest="stop", type=int, default=6765)
    p.add_argument("--extremes", action="store_true", help="report only the minimum and maximum")
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("cdf", parents=[common], help="dyadic bounds on G_φ(x)")
    p.add_argument("x", help="a rational in [0, φ], e.g. 0.5 or 3/4")
    p.add_argument("--depth", type=int, default=settings.CDF_DEPTH)
    p.set_defaults(func=_cmd_cdf)

    p = sub.add_parser("profile", parents=[common], help="predicted log-periodic limit of A(H)/H^α")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--depth", type=int, default=settings.CDF_DEPTH)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("verify", parents=[common], help="cross-path consistency sweeps")
    p.add_argument("--max", type=int, default=settings.VERIFY_MAX)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    ns = vars(args)
    return RunConfig(
        command=args.command,
        start=ns.get("start", 0),
        stop=ns.get("stop") or ns.get("steps") or ns.get("n") or ns.get("max") or 0,
        depth=ns.get("depth"),
        limit=ns.get("limit"),
        format=args.format,
        precision=args.precision,
        jobs=args.jobs,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _run_config(args)
        logger.debug("Running %s", config.model_dump_json(exclude_none=True))
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (ValueError, ZeroDivisionError) as exc:  # PartitionError and pydantic ValidationError included
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    configure_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
