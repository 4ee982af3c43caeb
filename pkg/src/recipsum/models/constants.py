from typing import List

from pydantic import BaseModel, Field, field_validator


class KTable(BaseModel):
    """The integers k_1..k_m of the reciprocal-li expansion"""
    values: List[int] = Field(..., min_length=1, description="k_1..k_m, exact integers")

    @field_validator("values")
    @classmethod
    def _positive(cls, v: List[int]) -> List[int]:
        if any(k < 1 for k in v):
            raise ValueError("all k_j must be positive integers")
        return v

    @property
    def m(self) -> int:
        return len(self.values)

    def k(self, index: int) -> int:
        """k_index with the 1-based indexing of the recurrence"""
        if not 1 <= index <= self.m:
            raise IndexError(f"k_{index} not in table of length {self.m}")
        return self.values[index - 1]

    def covers(self, index: int) -> bool:
        return 1 <= index <= self.m
