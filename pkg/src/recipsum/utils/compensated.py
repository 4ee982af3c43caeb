import math
from typing import Tuple

import numpy as np

# unit roundoff of IEEE double
UNIT_ROUNDOFF = 2.0 ** -53


def two_sum(a: float, b: float) -> Tuple[float, float]:
    """Error-free transformation: a + b == s + t exactly"""
    s = a + b
    bp = s - a
    ap = s - bp
    t = (a - ap) + (b - bp)
    return s, t


class CompensatedSum:
    """Running compensated sum with a rigorous rounding-error bound

    Each added value may itself carry an error (its own bound is passed in
    with it); the accumulator tracks the total of those plus the rounding it
    introduces. Values are combined strictly in call order.
    """

    def __init__(self) -> None:
        self._sum = 0.0
        self._carry = 0.0
        self._abs_total = 0.0
        self._input_error = 0.0
        self._count = 0

    def add(self, value: float, error: float = 0.0) -> None:
        """Add a value whose own error is bounded by `error`"""
        self._sum, t = two_sum(self._sum, value)
        self._carry += t
        self._abs_total += abs(value)
        self._input_error += error
        self._count += 1

    def add_block(self, terms: np.ndarray, term_rel_err: float = UNIT_ROUNDOFF) -> None:
        """Add an ordered block of terms, each exact up to term_rel_err relative

        The block is reduced with math.fsum (correctly rounded), so the block
        contributes one rounding on top of the per-term errors.
        """
        if terms.size == 0:
            return
        block = math.fsum(terms)
        term_total = float(np.sum(np.abs(terms)))
        self.add(block, term_rel_err * term_total + UNIT_ROUNDOFF * abs(block))

    @property
    def value(self) -> float:
        return self._sum + self._carry

    @property
    def error_bound(self) -> float:
        n = self._count
        accumulation = UNIT_ROUNDOFF * abs(self.value) + 2.0 * n * UNIT_ROUNDOFF ** 2 * self._abs_total
        return self._input_error + accumulation

    def copy(self) -> "CompensatedSum":
        clone = CompensatedSum()
        clone._sum = self._sum
        clone._carry = self._carry
        clone._abs_total = self._abs_total
        clone._input_error = self._input_error
        clone._count = self._count
        return clone
