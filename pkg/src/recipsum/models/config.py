from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class Settings(BaseModel):
    """Run defaults loaded from config/defaults.json and RECIPSUM_* overrides"""
    segment_size: int = Field(default=1 << 20, ge=1024, description="Odd flags per sieve segment")
    threads: int = Field(default=1, ge=1, le=256, description="Worker threads for the sieve")
    tolerance: Optional[float] = Field(None, gt=0.0, description="Fixed stabilization tolerance")
    stabilization_constant: float = Field(default=50.0, gt=0.0,
                                          description="K in the default tolerance K/log^m x")
    growth_limit: float = Field(default=10.0, gt=1.0, description="Maximum accepted decade growth ratio")
    default_grid: str = Field(default="1e4:1e8:x10")
    large_grid: str = Field(default="1e4:1e9:x10")
    c_env: float = Field(default=1.0, gt=0.0, description="Envelope constant in x·exp(-C_env·δ(x))")
    direct_sum_cutoff: int = Field(default=10 ** 8, ge=10, description="Terms summed directly before Euler-Maclaurin")
    quad_rel_tol: float = Field(default=1e-13, gt=0.0)
    max_panels: int = Field(default=10 ** 6, ge=16)
    li_cross_tol: float = Field(default=1e-10, gt=0.0)


class RunConfig(BaseModel):
    """Validated parameters of one CLI command"""
    command: str
    x: Optional[int] = Field(None, ge=2)
    m: Optional[int] = Field(None, ge=0)
    grid: Optional[List[int]] = None
    segment_size: int = Field(default=1 << 20, ge=1024)
    threads: int = Field(default=1, ge=1, le=256)
    tolerance: Optional[float] = Field(None, gt=0.0)
    out: Optional[Path] = None

    @model_validator(mode="after")
    def _command_preconditions(self) -> "RunConfig":
        if self.command == "kconst" and (self.m is None or self.m < 1):
            raise ValueError("kconst requires m >= 1")
        if self.command in ("verify", "compare") and (self.m is None or self.m < 2):
            raise ValueError(f"{self.command} requires m >= 2")
        if self.command in ("verify", "compare", "envelope", "decompose"):
            if not self.grid:
                raise ValueError(f"{self.command} requires a non-empty grid")
            if self.grid != sorted(set(self.grid)):
                raise ValueError("grid must be strictly ascending")
        if self.command == "verify" and len(self.grid or []) < 3:
            raise ValueError("verify requires at least 3 grid points")
        if self.command == "decompose" and min(self.grid or [3]) < 3:
            raise ValueError("decompose requires grid points >= 3")
        if self.command == "verify" and min(self.grid or [10 ** 3]) < 10 ** 3:
            raise ValueError("verify requires grid points >= 1000")
        return self
