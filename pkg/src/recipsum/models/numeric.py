from pydantic import BaseModel, Field, model_validator


class QuadratureResult(BaseModel):
    """Numerical value with an absolute-error estimate"""
    value: float = Field(..., description="Computed value")
    abs_err_estimate: float = Field(..., ge=0.0, description="Estimated absolute error")
    panels: int = Field(default=0, ge=0, description="Panels used by the quadrature, 0 if none")
    method: str = Field(default="", description="Method that produced the value")

    def agrees_with(self, other: "QuadratureResult", rel_slack: float = 1e-12) -> bool:
        """Whether two results agree within their combined error estimates"""
        slack = rel_slack * max(abs(self.value), abs(other.value))
        return abs(self.value - other.value) <= self.abs_err_estimate + other.abs_err_estimate + slack


class ExpansionEval(BaseModel):
    """Value of a truncated asymptotic expansion"""
    x: float = Field(..., gt=1.0, description="Evaluation point")
    order: int = Field(..., ge=0, description="Truncation order m")
    value: float
    last_term_magnitude: float = Field(..., ge=0.0, description="|final retained term|")

    @model_validator(mode="after")
    def _not_nan(self) -> "ExpansionEval":
        if self.value != self.value:
            raise ValueError("expansion value is NaN")
        return self
