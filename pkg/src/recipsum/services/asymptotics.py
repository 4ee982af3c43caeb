"""
Asymptotic formulas for S(x) = Σ_{2<=n<=x} 1/π(n) and fits of their constants

    S(x) = ½log²x - log x - log log x + C + Σ_{r=2}^{m} k_r/((r-1)log^{r-1}x) + O(1/log^m x)
    S(x) = log x·log(li x) - ∫_3^x log(li t)/t dt + B + O(exp(-Dδ(x)))

C and B are fitted against the exact sum: the estimate at x is the exact
value minus the constant-free formula, and the fit reports its drift over
the upper part of the grid.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..models.asymptotics import (
    ComparisonRow,
    Decomposition,
    ErrorEnvelope,
    ErrorRow,
    FitReport,
    FittedConstant,
    Formula8Eval,
    RemainderRow,
)
from ..models.constants import KTable
from ..models.numeric import QuadratureResult
from ..utils.errors import require
from ..utils.quadrature import adaptive_quad
from .li import li, li_array
from .sieve import SieveOracle
from .summation import DIRECT_SUM_CUTOFF, partial_sum

logger = logging.getLogger(__name__)

ExactSumProvider = Callable[[int], float]

FIT_MIN_X = 1000
FORMULA12_REL_TOL = 1e-11
STABILIZATION_CONSTANT = 50.0


def delta(x: float) -> float:
    """δ(x) = (log x)^{3/5}(log log x)^{-1/5}"""
    require(x > math.e, "delta", "x", x, "must exceed e")
    log_x = math.log(x)
    return log_x ** 0.6 * math.log(log_x) ** -0.2


def error_envelope(x: float, c_env: float = 1.0) -> ErrorEnvelope:
    """x·exp(-C_env·δ(x)), the bound on |π(x) - li x|"""
    require(c_env > 0, "error_envelope", "c_env", c_env, "must be positive")
    d = delta(x)
    return ErrorEnvelope(x=x, delta=d, c_env=c_env, envelope=x * math.exp(-c_env * d))


def formula4(x: float) -> float:
    """½log²x"""
    require(x >= 3, "formula4", "x", x, "must be at least 3")
    return 0.5 * math.log(x) ** 2


def formula5(x: float) -> float:
    """½log²x - log x - log log x"""
    require(x >= 3, "formula5", "x", x, "must be at least 3")
    log_x = math.log(x)
    return math.fsum([0.5 * log_x ** 2, -log_x, -math.log(log_x)])


def formula8(x: float, m: int, C: float, k: KTable) -> Formula8Eval:
    require(x >= 3, "formula8", "x", x, "must be at least 3")
    require(m >= 2, "formula8", "m", m, "must be at least 2")
    require(k.covers(m), "formula8", "k", k.m, f"table must cover k_{m}")
    log_x = math.log(x)
    terms = [0.5 * log_x ** 2, -log_x, -math.log(log_x), C]
    terms.extend(float(k.k(r)) / ((r - 1) * log_x ** (r - 1)) for r in range(2, m + 1))
    return Formula8Eval(x=x, m=m, C=C, value=math.fsum(terms))


def _log_li_integral(x: float) -> QuadratureResult:
    # ∫_3^x log(li t)/t dt = ∫_{log 3}^{log x} log(li e^u) du
    return adaptive_quad(lambda u: np.log(li_array(np.exp(u))), math.log(3.0), math.log(x),
                         rel_tol=FORMULA12_REL_TOL, operation="formula12")


def formula12(x: float, B: float) -> float:
    """log x·log(li x) - ∫_3^x log(li t)/t dt + B"""
    require(x > 3, "formula12", "x", x, "must exceed 3")
    integral = _log_li_integral(x)
    return math.fsum([math.log(x) * math.log(li(x).value), -integral.value, B])


def recip_li_integral(x: float) -> QuadratureResult:
    """∫_3^x dt/li t"""
    require(x > 3, "recip_li_integral", "x", x, "must exceed 3")
    return adaptive_quad(lambda u: np.exp(u) / li_array(np.exp(u)), math.log(3.0), math.log(x),
                         rel_tol=FORMULA12_REL_TOL, operation="recip_li_integral")


def _check_fit_grid(x_grid: Sequence[int], operation: str) -> List[int]:
    grid = [int(x) for x in x_grid]
    require(len(grid) >= 3, operation, "x_grid", grid, "needs at least 3 points")
    require(all(a < b for a, b in zip(grid, grid[1:])), operation, "x_grid", grid,
            "must be strictly ascending")
    require(grid[0] >= FIT_MIN_X, operation, "x_grid", grid[0], f"points must be at least {FIT_MIN_X}")
    return grid


def _prefetch(oracle: ExactSumProvider, grid: Sequence[int]) -> None:
    prefetch = getattr(oracle, "prefetch", None)
    if prefetch is not None:
        prefetch(grid)


def remainder_tail_allowance(x: float) -> float:
    """log x/sqrt x, the size of the prime-remainder tail in a fitted constant at x"""
    return math.log(x) / math.sqrt(x)


def default_tolerance(x: float, power: int, stabilization_constant: float = STABILIZATION_CONSTANT) -> float:
    """K/log^power x plus the remainder tail allowance, at the first retained point x"""
    return stabilization_constant / math.log(x) ** power + remainder_tail_allowance(x)


def retained_count(n: int) -> int:
    """Trailing samples a fit's spread is taken over: the upper half, at least 3"""
    return min(n, max(3, math.ceil(n / 2)))


def _fit_report(
    name: FittedConstant,
    m: Optional[int],
    samples: List[Tuple[int, float]],
    tolerance: Optional[float],
    stabilization_constant: float,
    power: int,
) -> FitReport:
    retained = retained_count(len(samples))
    tail = [estimate for _, estimate in samples[-retained:]]
    if tolerance is None:
        tolerance = default_tolerance(samples[-retained][0], power, stabilization_constant)
    spread = max(tail) - min(tail)
    report = FitReport(
        constant_name=name,
        m=m,
        samples=samples,
        retained=retained,
        central_value=samples[-1][1],
        spread=spread,
        tolerance=tolerance,
        stabilized=spread <= tolerance,
    )
    logger.debug("fit %s (m=%s): central=%r spread=%.3g tolerance=%.3g",
                 name.value, m, report.central_value, spread, tolerance)
    return report


def fit_C(
    x_grid: Sequence[int],
    m: int,
    k: KTable,
    oracle: ExactSumProvider,
    tolerance: Optional[float] = None,
    stabilization_constant: float = STABILIZATION_CONSTANT,
) -> FitReport:
    """Estimate C at each grid point as S(x) - formula8(x, m, 0)

    Without an explicit tolerance, the spread must stay within
    default_tolerance(x, m) at the first retained point: the truncation
    scale stabilization_constant/log^m x plus the prime-remainder tail.
    """
    grid = _check_fit_grid(x_grid, "fit_C")
    require(m >= 2, "fit_C", "m", m, "must be at least 2")
    _prefetch(oracle, grid)
    samples = [(x, oracle(x) - formula8(x, m, 0.0, k).value) for x in grid]
    return _fit_report(FittedConstant.C, m, samples, tolerance, stabilization_constant, m)


def fit_B(
    x_grid: Sequence[int],
    oracle: ExactSumProvider,
    tolerance: Optional[float] = None,
    stabilization_constant: float = STABILIZATION_CONSTANT,
) -> FitReport:
    """Estimate B at each grid point as S(x) - formula12(x, 0)

    The default tolerance is that of fit_C with m = 2.
    """
    grid = _check_fit_grid(x_grid, "fit_B")
    _prefetch(oracle, grid)
    samples = [(x, oracle(x) - formula12(x, 0.0)) for x in grid]
    return _fit_report(FittedConstant.B, None, samples, tolerance, stabilization_constant, 2)


def error_table(
    x_grid: Sequence[int],
    m: int,
    C: float,
    k: KTable,
    oracle: ExactSumProvider,
) -> List[ErrorRow]:
    """Rows (x, exact, formula8, diff, diff·log^m x) in grid order"""
    grid = [int(x) for x in x_grid]
    require(len(grid) >= 1, "error_table", "x_grid", grid, "must not be empty")
    require(all(a < b for a, b in zip(grid, grid[1:])), "error_table", "x_grid", grid,
            "must be strictly ascending")
    require(m >= 2, "error_table", "m", m, "must be at least 2")
    _prefetch(oracle, grid)
    rows = []
    for x in grid:
        exact = oracle(x)
        approx = formula8(x, m, C, k).value
        diff = exact - approx
        rows.append(ErrorRow(x=x, exact=exact, approx=approx, diff=diff,
                             scaled_diff=diff * math.log(x) ** m))
    return rows


def growth_ratio(values: Sequence[float]) -> float:
    """Worst ratio |later| / |earlier| over ordered pairs; 0 when nothing to compare

    Values that are exactly zero (the fit point itself) are never a
    denominator.
    """
    worst = 0.0
    for i, earlier in enumerate(values):
        if earlier == 0:
            continue
        for later in values[i + 1:]:
            worst = max(worst, abs(later) / abs(earlier))
    return worst


def spread_ratio(values: Sequence[float]) -> float:
    """max|v| / min|v|"""
    magnitudes = [abs(v) for v in values]
    require(len(magnitudes) > 0, "spread_ratio", "values", values, "must not be empty")
    smallest = min(magnitudes)
    return math.inf if smallest == 0 else max(magnitudes) / smallest


def prime_remainder(x: int, oracle: SieveOracle, c_env: float = 1.0) -> RemainderRow:
    """R(x) = π(x) - li x against the envelope x·exp(-C_env·δ(x))"""
    require(x >= 3, "prime_remainder", "x", x, "must be at least 3")
    count = oracle.pi(x)
    li_x = li(x).value
    remainder = count - li_x
    envelope = error_envelope(x, c_env).envelope
    return RemainderRow(x=x, pi=count, li=li_x, remainder=remainder,
                        envelope=envelope, ratio=abs(remainder) / envelope)


def compare_formulas(
    x_grid: Sequence[int],
    C: float,
    B: float,
    k: KTable,
    oracle: ExactSumProvider,
    m: int = 4,
) -> List[ComparisonRow]:
    """Each formula's value next to the exact sum, in grid order"""
    grid = [int(x) for x in x_grid]
    require(all(x > 3 for x in grid), "compare_formulas", "x_grid", grid, "points must exceed 3")
    _prefetch(oracle, grid)
    return [
        ComparisonRow(
            x=x,
            exact=oracle(x),
            formula4=formula4(x),
            formula5=formula5(x),
            formula8=formula8(x, m, C, k).value,
            formula12=formula12(x, B),
        )
        for x in grid
    ]


def _recip_li(t: np.ndarray) -> np.ndarray:
    return 1.0 / li_array(t)


def _recip_li_deriv(t: np.ndarray) -> np.ndarray:
    return -1.0 / (li_array(t) ** 2 * np.log(t))


def decompose(x: int, oracle: ExactSumProvider, direct_cutoff: int = DIRECT_SUM_CUTOFF) -> Decomposition:
    """Split S(x) into Σ_{3<=n<=x} 1/li n and C_1, and that sum into ∫_3^x dt/li t and C_0

    Both constants are estimates at x: the C_1 tail decays like the prime
    remainder, the C_0 tail like log x/x.
    """
    require(x > 3, "decompose", "x", x, "must exceed 3")
    exact = oracle(x)
    recip_sum = partial_sum(_recip_li, _recip_li_deriv, 3, x, direct_cutoff).value
    integral = recip_li_integral(x).value
    return Decomposition(
        x=x,
        exact=exact,
        recip_li_sum=recip_sum,
        c1_estimate=exact - recip_sum,
        recip_li_integral=integral,
        c0_estimate=recip_sum - integral,
    )
