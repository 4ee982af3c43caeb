from pydantic import BaseModel, Field, model_validator


class SieveConfig(BaseModel):
    """Parameters of the segmented sieve"""
    limit: int = Field(..., ge=2, description="Upper end x of the range 2..x")
    segment_size: int = Field(default=1 << 20, ge=1024, description="Odd-number flags per segment")
    threads: int = Field(default=1, ge=1, le=256, description="Worker threads for sieving segments")

    @property
    def span(self) -> int:
        """Integers covered by one segment"""
        return 2 * self.segment_size


class ExactSumResult(BaseModel):
    """Exact partial sum of 1/π(n) over 2 <= n <= x"""
    x: int = Field(..., ge=2)
    value: float = Field(..., gt=0.0)
    comp_error_bound: float = Field(..., ge=0.0, description="Bound on accumulated rounding error")
    n_terms: int = Field(..., ge=1)

    @model_validator(mode="after")
    def _term_count(self) -> "ExactSumResult":
        if self.n_terms != self.x - 1:
            raise ValueError(f"n_terms must equal x - 1, got {self.n_terms} for x={self.x}")
        return self
