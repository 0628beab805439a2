from __future__ import annotations

import logging
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from app.models.partition import VerifyReport

logger = logging.getLogger(__name__)

# In-memory job store
_JOBS: dict[str, "Job"] = {}


@dataclass
class Job:
    job_id: str
    max_n: int = 0
    jobs: int = 1
    status: str = "pending"          # pending | running | done | error
    progress_message: str = "Waiting to start…"
    report_path: Optional[Path] = None
    report: Optional[VerifyReport] = None
    error_detail: Optional[str] = None


def create_job(max_n: int, jobs: int = 1) -> Job:
    job_id = str(uuid.uuid4())
    job = Job(job_id=job_id, max_n=max_n, jobs=jobs)
    _JOBS[job_id] = job
    return job


def get_job(job_id: str) -> Optional[Job]:
    return _JOBS.get(job_id)


def update_job(job_id: str, **kwargs) -> None:
    job = _JOBS.get(job_id)
    if job is None:
        return
    for key, value in kwargs.items():
        setattr(job, key, value)


def run_verify_job(job_id: str, reports_dir: Path) -> None:
    """Runs one verification job; called from a BackgroundTasks thread."""
    from app.core import report_generator, verify

    job = get_job(job_id)
    if job is None:
        logger.warning("Verify job %s vanished before it started", job_id)
        return
    try:
        update_job(job_id, status="running", progress_message=f"Scanning n ≤ {job.max_n}…")
        report = verify.run_verification(job.max_n, job.jobs)

        update_job(job_id, progress_message="Writing report…")
        reports_dir.mkdir(parents=True, exist_ok=True)
        report_path = reports_dir / f"{job_id}.md"
        report_generator.generate_report(report, report_path)

        update_job(
            job_id,
            status="done",
            progress_message="Report ready." if report.passed else "Report ready, with failures.",
            report_path=report_path,
            report=report,
        )
        logger.info("Verify job %s completed (passed=%s).", job_id, report.passed)

    except Exception as exc:
        logger.exception("Verify job %s failed: %s", job_id, exc)
        update_job(job_id, status="error", error_detail=str(exc), progress_message="Verification failed.")
