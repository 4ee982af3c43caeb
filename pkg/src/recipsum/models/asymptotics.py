import math
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class FittedConstant(str, Enum):
    C = "C"
    B = "B"


class Formula8Eval(BaseModel):
    x: float = Field(..., ge=3.0)
    m: int = Field(..., ge=2)
    C: float
    value: float

    @field_validator("value")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("formula value is not finite")
        return v


class FitReport(BaseModel):
    """Per-sample estimates of an additive constant and their stabilization"""
    constant_name: FittedConstant
    m: Optional[int] = Field(None, description="Truncation order, None for B")
    samples: List[Tuple[int, float]] = Field(..., min_length=3)
    retained: int = Field(..., ge=1, description="Number of trailing samples the spread is taken over")
    central_value: float
    spread: float = Field(..., ge=0.0)
    tolerance: float = Field(..., ge=0.0)
    stabilized: bool

    @model_validator(mode="after")
    def _consistent(self) -> "FitReport":
        tail = [estimate for _, estimate in self.samples[-self.retained:]]
        if self.spread != max(tail) - min(tail):
            raise ValueError("spread must equal max - min over the retained samples")
        if self.stabilized != (self.spread <= self.tolerance):
            raise ValueError("stabilized must equal spread <= tolerance")
        return self

    @property
    def x_max(self) -> int:
        return self.samples[-1][0]


class ErrorEnvelope(BaseModel):
    x: float
    delta: float = Field(..., gt=0.0)
    c_env: float = Field(..., gt=0.0)
    envelope: float = Field(..., ge=0.0)


class ErrorRow(BaseModel):
    """One row of an error-decay table"""
    x: int
    exact: float
    approx: float
    diff: float
    scaled_diff: float


class RemainderRow(BaseModel):
    """π(x) = li x + R(x) measured against the envelope x·exp(-C_env·δ(x))"""
    x: int
    pi: int
    li: float
    remainder: float
    envelope: float
    ratio: float = Field(..., ge=0.0, description="|R(x)| / envelope")


class ComparisonRow(BaseModel):
    """Historical and current formulas against the exact sum"""
    x: int
    exact: float
    formula4: float
    formula5: float
    formula8: float
    formula12: float


class Decomposition(BaseModel):
    """Split S(x) = Σ_{3<=n<=x} 1/li n + C_1 + (tail) and the integral form of the first sum"""
    x: int = Field(..., ge=3)
    exact: float
    recip_li_sum: float
    c1_estimate: float
    recip_li_integral: float
    c0_estimate: float
