from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class AuxSumTag(str, Enum):
    LOG_OVER_N = "log_over_n"          # Σ log n / n
    RECIP_N = "recip_n"                # Σ 1/n
    RECIP_N_LOG = "recip_n_log"        # Σ k_1/(n log n)
    RECIP_N_LOG_R = "recip_n_log_r"    # Σ k_r/(n log^r n), r >= 2


class AuxSumKind(BaseModel):
    tag: AuxSumTag
    r: Optional[int] = Field(None, ge=2, description="Power of log n, only for RECIP_N_LOG_R")

    @model_validator(mode="after")
    def _r_matches_tag(self) -> "AuxSumKind":
        if self.tag == AuxSumTag.RECIP_N_LOG_R and self.r is None:
            raise ValueError("RECIP_N_LOG_R requires r >= 2")
        if self.tag != AuxSumTag.RECIP_N_LOG_R and self.r is not None:
            raise ValueError(f"{self.tag.value} takes no r")
        return self

    @classmethod
    def parse(cls, text: str) -> "AuxSumKind":
        """'log_over_n', 'recip_n', 'recip_n_log' or 'recip_n_log_r:<r>'"""
        name, _, power = text.strip().lower().partition(":")
        tag = AuxSumTag(name)
        return cls(tag=tag, r=int(power) if power else None)

    @property
    def label(self) -> str:
        return f"{self.tag.value}:{self.r}" if self.r is not None else self.tag.value


class AuxSumResult(BaseModel):
    """Partial sum over 3 <= n <= x with its constant-free main term"""
    kind: AuxSumKind
    x: float = Field(..., ge=3.0)
    value: float
    main_term: float = Field(..., description="Main term without its additive constant")
    constant_estimate: float = Field(..., description="value - main_term, estimate of c_1, c_2, c_3 or D_r")
    abs_err_estimate: float = Field(default=0.0, ge=0.0)
