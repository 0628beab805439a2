from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from app.core.golden import GoldenNum, to_decimal

if TYPE_CHECKING:
    from app.core.dynamics import OrbitPoint
    from app.core.staircase import Interval


class GrowthSample(BaseModel):
    H: int = Field(ge=1)
    logH: float
    ratio: float = Field(gt=0, description="A(H) / H^α with α = log 2 / log φ")


class Extremes(BaseModel):
    h_min: int
    h_max: int
    min_ratio: float
    argmin: int
    max_ratio: float
    argmax: int


class CdfBound(BaseModel):
    """Dyadic bounds lower_num/2^k ≤ G_φ(x) ≤ upper_num/2^k."""

    x: str
    k: int = Field(ge=2)
    lower_num: int = Field(ge=0)
    upper_num: int = Field(ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> CdfBound:
        if not self.lower_num <= self.upper_num <= 2 ** self.k:
            raise ValueError(f"bounds {self.lower_num}, {self.upper_num} are not ordered inside [0, 2^{self.k}]")
        return self

    @property
    def denominator(self) -> int:
        return 2 ** self.k

    @property
    def lower(self) -> float:
        return self.lower_num / self.denominator

    @property
    def upper(self) -> float:
        return self.upper_num / self.denominator

    @property
    def midpoint(self) -> float:
        return (self.lower_num + self.upper_num) / (2 * self.denominator)


class ProfilePoint(BaseModel):
    gamma: float = Field(ge=1)
    value: float = Field(gt=0)


class RunStatistics(BaseModel):
    """Longest monotone runs R(n) ≤ … ≤ R(n+k) (and the strict variant) over n ≤ limit."""

    limit: int
    k_max: int
    witnesses: list[int]
    strict_k_max: int
    strict_witnesses: list[int]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    elapsed_seconds: float = 0.0


class VerifyReport(BaseModel):
    max_n: int
    jobs: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Literal[
        "r", "seq", "zeckendorf", "orbit", "staircase", "window",
        "patch", "growth", "cdf", "profile", "verify", "serve",
    ]
    start: int = Field(default=0, ge=0)
    stop: int = Field(default=0, ge=0)
    depth: Optional[int] = Field(default=None, ge=0)
    limit: Optional[int] = Field(default=None, ge=0)
    format: Literal["csv", "json"] = "csv"
    precision: int = Field(default=12, ge=1)
    jobs: int = Field(default=1, ge=1)

    @field_validator("stop")
    @classmethod
    def _stop_after_start(cls, v: int, info: ValidationInfo) -> int:
        start = info.data.get("start", 0)
        if v and v < start:
            raise ValueError(f"range end {v} is below its start {start}")
        return v


# ── Emission rows shared by the CLI and the HTTP surface ─────────────────────

class RRow(BaseModel):
    n: int
    R: int


class ZeckendorfRow(BaseModel):
    n: int
    word: str
    blocks: list[int]
    r: int
    r_prev: Optional[int] = None


class GoldenValue(BaseModel):
    """p + qφ with a rounded decimal alongside."""

    p: int
    q: int
    dec: str

    @classmethod
    def of(cls, value: GoldenNum, digits: int) -> GoldenValue:
        return cls(p=value.p, q=value.q, dec=to_decimal(value, digits))


class OrbitRow(BaseModel):
    """One point of the log h cloud: y_n with h(y_n) = R(n+1)/R(n)."""

    n: int
    y_decimal: str
    y_p: int
    y_q: int
    x_p: int
    x_q: int
    h_num: int
    h_den: int
    log_h: float

    @classmethod
    def of(cls, pt: OrbitPoint, h: tuple[int, int], digits: int) -> OrbitRow:
        num, den = h
        return cls(
            n=pt.n,
            y_decimal=to_decimal(pt.y, digits),
            y_p=pt.y.p,
            y_q=pt.y.q,
            x_p=pt.x.p,
            x_q=pt.x.q,
            h_num=num,
            h_den=den,
            log_h=math.log(num) - math.log(den),
        )


class IntervalRow(BaseModel):
    lo: GoldenValue
    hi: GoldenValue
    lo_closed: bool = True
    hi_closed: bool = True

    @classmethod
    def of(cls, iv: Interval, digits: int) -> IntervalRow:
        return cls(
            lo=GoldenValue.of(iv.lo, digits),
            hi=GoldenValue.of(iv.hi, digits),
            lo_closed=iv.lo_closed,
            hi_closed=iv.hi_closed,
        )


class StaircaseRow(BaseModel):
    lo: GoldenValue
    hi: GoldenValue
    value_num: int
    value_den: int

    @classmethod
    def of(cls, iv: Interval, value: Fraction, digits: int) -> StaircaseRow:
        return cls(
            lo=GoldenValue.of(iv.lo, digits),
            hi=GoldenValue.of(iv.hi, digits),
            value_num=value.numerator,
            value_den=value.denominator,
        )


class PatchResult(BaseModel):
    pattern: str
    limit: int
    hits: list[int]
    density: Optional[GoldenValue] = None
