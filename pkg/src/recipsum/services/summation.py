"""
First-order Euler-Maclaurin summation and the auxiliary partial sums

    Σ_{X<n<=Y} f(n) = ∫_X^Y f dt - ψ(Y)f(Y) + ψ(X)f(X) + ∫_X^Y ψ(t)f'(t) dt

with ψ(t) = t - [t] - 1/2. The ψ·f' integrand jumps at every integer, so its
quadrature is split there: one panel per unit interval, up to the panel cap.
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np

from ..models.constants import KTable
from ..models.numeric import QuadratureResult
from ..models.summation import AuxSumKind, AuxSumResult, AuxSumTag
from ..utils.compensated import UNIT_ROUNDOFF, CompensatedSum
from ..utils.errors import NumericalError, require
from ..utils.quadrature import adaptive_quad

logger = logging.getLogger(__name__)

RealFunction = Callable[[np.ndarray], np.ndarray]

DIRECT_SUM_CUTOFF = 10 ** 8
EM_REL_TOL = 1e-12
_BLOCK = 1 << 20
# relative error of one summand evaluation (a log, a product, a division)
_TERM_REL_ERR = 4.0 * UNIT_ROUNDOFF


def psi(x: float) -> float:
    """ψ(x) = x - floor(x) - 1/2, in [-1/2, 1/2)"""
    return x - math.floor(x) - 0.5


def psi_array(t: np.ndarray) -> np.ndarray:
    return t - np.floor(t) - 0.5


def _at(f: RealFunction, t: float) -> float:
    point = np.array([t], dtype=float)
    return float(np.broadcast_to(np.asarray(f(point), dtype=float), point.shape)[0])


def euler_maclaurin(
    f: RealFunction,
    f_deriv: RealFunction,
    X: float,
    Y: float,
    *,
    rel_tol: float = EM_REL_TOL,
    max_panels: int = 10 ** 6,
) -> QuadratureResult:
    """Σ_{X<n<=Y} f(n) by the first-order Euler-Maclaurin formula

    Unit panels beyond the cap are not integrated; their contribution is
    bounded by |f'(c) - f'(N)|/4 (f' monotone there), which must fit the
    tolerance or NumericalError is raised.
    """
    require(X < Y, "euler_maclaurin", "X", X, f"must be below Y={Y}")

    main = adaptive_quad(f, X, Y, rel_tol=rel_tol, max_panels=max_panels,
                         operation="euler_maclaurin.integral")
    tol = rel_tol * max(abs(main.value), 1.0)
    boundary = -psi(Y) * _at(f, Y) + psi(X) * _at(f, X)

    def sawtooth(t: np.ndarray) -> np.ndarray:
        return psi_array(t) * f_deriv(t)

    first = math.floor(X) + 1
    last = math.ceil(Y) - 1
    parts = []
    tail_bound = 0.0
    if last - first + 2 <= max_panels:
        if first <= last:
            breaks = np.arange(first, last + 1, dtype=float)
        else:
            breaks = None
        parts.append(adaptive_quad(sawtooth, X, Y, breakpoints=breaks, abs_tol=tol / 2,
                                   rel_tol=0.0, max_panels=max_panels,
                                   operation="euler_maclaurin.sawtooth"))
    else:
        cut = first + max_panels // 2
        top = math.floor(Y)
        parts.append(adaptive_quad(sawtooth, X, float(cut),
                                   breakpoints=np.arange(first, cut, dtype=float),
                                   abs_tol=tol / 4, rel_tol=0.0, max_panels=max_panels,
                                   operation="euler_maclaurin.sawtooth"))
        if Y > top:
            parts.append(adaptive_quad(sawtooth, float(top), Y, abs_tol=tol / 4, rel_tol=0.0,
                                       operation="euler_maclaurin.sawtooth"))
        tail_bound = 0.25 * abs(_at(f_deriv, float(cut)) - _at(f_deriv, float(top)))
        if tail_bound > tol / 2:
            raise NumericalError("euler_maclaurin", "untreated unit panels exceed the tolerance", {
                "panels": max_panels, "tail_bound": tail_bound, "tolerance": tol, "interval": (X, Y),
            })

    value = math.fsum([main.value, boundary] + [p.value for p in parts])
    err = (main.abs_err_estimate + sum(p.abs_err_estimate for p in parts) + tail_bound
           + 4 * UNIT_ROUNDOFF * (abs(main.value) + abs(boundary)))
    panels = main.panels + sum(p.panels for p in parts)
    logger.debug("euler_maclaurin on (%g, %g]: value=%r err=%.3g panels=%d", X, Y, value, err, panels)
    return QuadratureResult(value=value, abs_err_estimate=err, panels=panels, method="euler-maclaurin")


def euler_maclaurin_sum(f: RealFunction, f_deriv: RealFunction, X: float, Y: float) -> float:
    return euler_maclaurin(f, f_deriv, X, Y).value


def partial_sum(
    f: RealFunction,
    f_deriv: RealFunction,
    lo: int,
    x: float,
    direct_cutoff: int = DIRECT_SUM_CUTOFF,
) -> QuadratureResult:
    """Σ_{lo<=n<=x} f(n): direct up to direct_cutoff, Euler-Maclaurin beyond"""
    top = math.floor(x)
    if top < lo:
        return QuadratureResult(value=0.0, abs_err_estimate=0.0, method="direct")

    acc = CompensatedSum()
    stop = min(top, max(direct_cutoff, lo - 1))
    for start in range(lo, stop + 1, _BLOCK):
        n = np.arange(start, min(start + _BLOCK, stop + 1), dtype=float)
        acc.add_block(np.asarray(f(n), dtype=float), _TERM_REL_ERR)

    if stop == top:
        return QuadratureResult(value=acc.value, abs_err_estimate=acc.error_bound, method="direct")

    logger.debug("partial_sum: direct to %d, Euler-Maclaurin on (%d, %g]", stop, stop, x)
    tail = euler_maclaurin(f, f_deriv, float(stop), float(x))
    acc.add(tail.value, tail.abs_err_estimate)
    return QuadratureResult(value=acc.value, abs_err_estimate=acc.error_bound,
                            panels=tail.panels, method="direct+euler-maclaurin")


def _aux_terms(kind: AuxSumKind, k: KTable) -> Tuple[RealFunction, RealFunction]:
    """(summand, derivative) for one auxiliary sum"""
    if kind.tag == AuxSumTag.LOG_OVER_N:
        return (lambda t: np.log(t) / t), (lambda t: (1.0 - np.log(t)) / t ** 2)
    if kind.tag == AuxSumTag.RECIP_N:
        return (lambda t: 1.0 / t), (lambda t: -1.0 / t ** 2)

    r = 1 if kind.tag == AuxSumTag.RECIP_N_LOG else kind.r
    require(k.covers(r), "aux_sum", "k", k.m, f"table must cover k_{r}")
    kr = float(k.k(r))

    def summand(t: np.ndarray) -> np.ndarray:
        return kr / (t * np.log(t) ** r)

    def derivative(t: np.ndarray) -> np.ndarray:
        log_t = np.log(t)
        return -kr * (log_t + r) / (t ** 2 * log_t ** (r + 1))

    return summand, derivative


def aux_main_term(kind: AuxSumKind, x: float, k: KTable) -> float:
    """Main term of the partial sum without its additive constant"""
    log_x = math.log(x)
    if kind.tag == AuxSumTag.LOG_OVER_N:
        return 0.5 * log_x ** 2
    if kind.tag == AuxSumTag.RECIP_N:
        return log_x
    if kind.tag == AuxSumTag.RECIP_N_LOG:
        return math.log(log_x)
    return -float(k.k(kind.r)) / ((kind.r - 1) * log_x ** (kind.r - 1))


def aux_o_term(kind: AuxSumKind, x: float, k: KTable) -> float:
    """Magnitude of the remainder after the constant: log x/x, 1/x, k_1/(x log x), k_r/(x log^r x)"""
    log_x = math.log(x)
    if kind.tag == AuxSumTag.LOG_OVER_N:
        return log_x / x
    if kind.tag == AuxSumTag.RECIP_N:
        return 1.0 / x
    r = 1 if kind.tag == AuxSumTag.RECIP_N_LOG else kind.r
    return float(k.k(r)) / (x * log_x ** r)


def aux_sum(kind: AuxSumKind, x: float, k: KTable, direct_cutoff: int = DIRECT_SUM_CUTOFF) -> AuxSumResult:
    """Σ_{3<=n<=x} of the kind's summand, with the constant it converges to"""
    require(x >= 3, "aux_sum", "x", x, "must be at least 3")
    summand, derivative = _aux_terms(kind, k)
    total = partial_sum(summand, derivative, 3, x, direct_cutoff)
    main = aux_main_term(kind, x, k)
    return AuxSumResult(
        kind=kind,
        x=x,
        value=total.value,
        main_term=main,
        constant_estimate=total.value - main,
        abs_err_estimate=total.abs_err_estimate,
    )
