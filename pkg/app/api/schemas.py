from typing import Optional

from pydantic import BaseModel, Field


class VerifyRequest(BaseModel):
    max_n: int = Field(default=3000, ge=13)
    jobs: int = Field(default=1, ge=1, le=32)


class VerifyJobResponse(BaseModel):
    job_id: str


class JobStatusResponse(BaseModel):
    status: str
    progress_message: str
    passed: Optional[bool] = None
    error_detail: Optional[str] = None


class CdfResponse(BaseModel):
    x: str
    k: int
    lower_num: int
    upper_num: int
    denominator: int
    lower: float
    upper: float
