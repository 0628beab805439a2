from __future__ import annotations
import logging
from typing import Annotated, Optional

from fastapi import APIRouter, BackgroundTasks, HTTPException, Query
from fastapi.responses import HTMLResponse

from app.api.schemas import CdfResponse, JobStatusResponse, VerifyJobResponse, VerifyRequest
from app.core import asymptotics, counting, dynamics, jobs, report_generator, staircase, zeckendorf
from app.core.errors import PartitionError
from app.dependencies import get_settings
from app.models.partition import (
    Extremes,
    GoldenValue,
    GrowthSample,
    IntervalRow,
    OrbitRow,
    PatchResult,
    ProfilePoint,
    RRow,
    StaircaseRow,
    ZeckendorfRow,
)

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/api")

Digits = Annotated[int, Query(ge=1, le=60)]


# ── Helpers ───────────────────────────────────────────────────────────────────

def _check_range(start: int, stop: int) -> None:
    limit = get_settings().API_MAX_LIMIT
    if start < 0 or stop < start:
        raise HTTPException(status_code=422, detail=f"Invalid range {start}..{stop}")
    if stop > limit:
        raise HTTPException(status_code=422, detail=f"Range end {stop} exceeds the limit {limit}")


def _domain_error(exc: Exception) -> HTTPException:
    logger.info("Rejected request: %s", exc)
    return HTTPException(status_code=422, detail=str(exc))


def _parse_patch(pattern: str) -> staircase.Patch:
    try:
        return staircase.Patch.parse(pattern)
    except (ValueError, ZeroDivisionError) as exc:
        raise _domain_error(exc) from exc


# ── Sequence and words ────────────────────────────────────────────────────────

@router.get("/r/{n}", response_model=ZeckendorfRow)
async def get_r(n: int):
    _check_range(n, n)
    word, state = counting.zeckendorf_state(n)
    return ZeckendorfRow(n=n, word=str(word), blocks=zeckendorf.blocks(word), r=state.r,
                         r_prev=state.r_prev if n else None)


@router.get("/seq", response_model=list[RRow])
async def get_seq(start: int = 0, stop: int = 13):
    _check_range(start, stop)
    return [RRow(n=n, R=v) for n, v in counting.batch_r(stop, start)]


@router.get("/zeckendorf/{n}", response_model=ZeckendorfRow)
async def get_zeckendorf(n: int):
    return await get_r(n)


@router.get("/orbit", response_model=list[OrbitRow])
async def get_orbit(start: int = 0, stop: int = 20, precision: Digits = 12):
    _check_range(start, stop)
    return [OrbitRow.of(pt, dynamics.h_pair(pt.y), precision) for pt in dynamics.orbit(stop, start)]


# ── Staircase and patches ─────────────────────────────────────────────────────

@router.get("/staircase", response_model=list[StaircaseRow])
async def get_staircase(depth: Annotated[int, Query(ge=0, le=14)] = 4, precision: Digits = 12):
    return [StaircaseRow.of(iv, value, precision) for iv, value in staircase.staircase_table(depth)]


@router.get("/window", response_model=list[IntervalRow])
async def get_window(pattern: str, precision: Digits = 12):
    patch = _parse_patch(pattern)
    try:
        window = staircase.patch_window(patch)
    except PartitionError as exc:
        raise _domain_error(exc) from exc
    return [IntervalRow.of(iv, precision) for iv in window.intervals]


@router.get("/patch", response_model=PatchResult)
async def get_patch(pattern: str, limit: int, density: bool = False, precision: Digits = 12):
    _check_range(0, limit)
    patch = _parse_patch(pattern)
    try:
        hits = staircase.patch_hits(patch, limit)
        exact = staircase.density(patch, precision)[0] if density else None
    except PartitionError as exc:
        raise _domain_error(exc) from exc
    return PatchResult(
        pattern=pattern,
        limit=limit,
        hits=hits,
        density=GoldenValue.of(exact, precision) if exact is not None else None,
    )


# ── Growth ────────────────────────────────────────────────────────────────────

@router.get("/growth", response_model=list[GrowthSample])
async def get_growth(start: int = 60, stop: int = 6765):
    _check_range(start, stop)
    if start < 1:
        raise HTTPException(status_code=422, detail="Growth samples start at H = 1")
    return asymptotics.growth_curve(start, stop)


@router.get("/growth/extremes", response_model=Extremes)
async def get_growth_extremes(start: int = 1000, stop: int = 100_000):
    _check_range(start, stop)
    if start < 1:
        raise HTTPException(status_code=422, detail="Growth samples start at H = 1")
    return asymptotics.extremes(start, stop)


@router.get("/cdf", response_model=CdfResponse)
async def get_cdf(x: str, depth: Annotated[int, Query(ge=2, le=28)] = 24):
    try:
        bound = asymptotics.cdf_bounds(x, depth)
    except (ValueError, ZeroDivisionError) as exc:
        raise _domain_error(exc) from exc
    return CdfResponse(**bound.model_dump(), denominator=bound.denominator, lower=bound.lower, upper=bound.upper)


@router.get("/profile", response_model=list[ProfilePoint])
async def get_profile(
    samples: Annotated[int, Query(ge=2, le=500)] = 50,
    depth: Annotated[Optional[int], Query(ge=2, le=28)] = None,
):
    return asymptotics.limit_profile(samples, depth)


# ── Verification jobs ─────────────────────────────────────────────────────────

@router.post("/verify", response_model=VerifyJobResponse)
async def create_verification(request: VerifyRequest, background_tasks: BackgroundTasks):
    settings = get_settings()
    _check_range(0, request.max_n)
    job = jobs.create_job(request.max_n, request.jobs)
    background_tasks.add_task(jobs.run_verify_job, job_id=job.job_id, reports_dir=settings.REPORTS_DIR)
    return VerifyJobResponse(job_id=job.job_id)


@router.get("/verify/{job_id}/status", response_model=JobStatusResponse)
async def get_verification_status(job_id: str):
    job = jobs.get_job(job_id)
    if job is None:
        raise HTTPException(status_code=404, detail="Job not found")
    return JobStatusResponse(
        status=job.status,
        progress_message=job.progress_message,
        passed=job.report.passed if job.report is not None else None,
        error_detail=job.error_detail,
    )


@router.get("/verify/{job_id}/report", response_class=HTMLResponse)
async def get_verification_report(job_id: str):
    job = jobs.get_job(job_id)
    if job is None:
        raise HTTPException(status_code=404, detail="Job not found")
    if job.status != "done":
        raise HTTPException(status_code=409, detail="Verification not complete")
    if job.report_path is None or not job.report_path.exists():
        raise HTTPException(status_code=500, detail="Report file missing")
    return HTMLResponse(report_generator.to_html(job.report_path.read_text(encoding="utf-8")))
