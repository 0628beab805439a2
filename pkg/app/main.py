from __future__ import annotations
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from app.api.routes import router
from app.dependencies import configure_logging, get_settings

configure_logging()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    settings = get_settings()
    logging.getLogger().setLevel(settings.LOG_LEVEL)
    # Purge stale report files from previous sessions (jobs are in-memory only)
    reports_dir = settings.REPORTS_DIR
    if reports_dir.exists():
        removed = 0
        for f in reports_dir.glob("*.md"):
            f.unlink()
            removed += 1
        if removed:
            logger.info("Cleaned up %d stale report file(s) from %s", removed, reports_dir)
    logger.info("Fibonacci partitions API started (oracle bound %d, max range %d).",
                settings.ORACLE_BOUND, settings.API_MAX_LIMIT)
    yield


app = FastAPI(title="Fibonacci Partitions", version="0.1.0", lifespan=lifespan)

app.include_router(router)


@app.get("/health")
async def health():
    return {"status": "ok"}
