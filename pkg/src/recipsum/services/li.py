"""
The logarithmic integral li x = ∫_2^x dt/log t and its truncated expansions

Two independent evaluations are kept: the exponential-integral route
li x = Ei(log x) - Ei(log 2) (primary) and adaptive quadrature of 1/log t
(oracle). Ei uses its power series for arguments up to SERIES_LIMIT and the
asymptotic series beyond.
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..models.constants import KTable
from ..models.numeric import ExpansionEval, QuadratureResult
from ..utils.compensated import UNIT_ROUNDOFF
from ..utils.errors import NumericalError, require
from ..utils.quadrature import adaptive_quad

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286060651209008240243
SERIES_LIMIT = 40.0
_MAX_TERMS = 400


def _ei_series(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # Ei(z) = γ + log z + Σ_{k>=1} z^k / (k·k!)
    term = z.copy()
    total = z.copy()
    k = 1
    while True:
        k += 1
        term = term * z / k
        contribution = term / k
        total = total + contribution
        if np.all(contribution <= UNIT_ROUNDOFF * 1e-2 * total):
            break
        if k > _MAX_TERMS:
            raise NumericalError("exponential_integral", "power series did not converge",
                                 {"terms": k, "z_max": float(z.max())})
    value = EULER_GAMMA + np.log(z) + total
    err = k * UNIT_ROUNDOFF * (total + np.abs(np.log(z)) + EULER_GAMMA)
    return value, err


def _ei_asymptotic(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # Ei(z) ~ e^z/z · Σ_{k>=0} k!/z^k, truncated at the smallest term
    term = np.ones_like(z)
    total = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    smallest = np.ones_like(z)
    k = 0
    while np.any(active):
        k += 1
        nxt = term * k / z
        growing = nxt >= term
        active &= ~growing & (nxt > UNIT_ROUNDOFF * 1e-2 * total)
        total = np.where(active, total + nxt, total)
        smallest = np.where(active, nxt, smallest)
        term = np.where(active, nxt, term)
        if k > _MAX_TERMS:
            break
    scale = np.exp(z) / z
    value = scale * total
    err = scale * (smallest + k * UNIT_ROUNDOFF * total)
    return value, err


def exponential_integral(z) -> Tuple[np.ndarray, np.ndarray]:
    """Ei(z) for z > 0, elementwise, with an absolute-error estimate"""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    require(bool(np.all(z > 0)), "exponential_integral", "z", float(z.min()), "must be positive")
    value = np.empty_like(z)
    err = np.empty_like(z)
    small = z <= SERIES_LIMIT
    if np.any(small):
        value[small], err[small] = _ei_series(z[small])
    if np.any(~small):
        value[~small], err[~small] = _ei_asymptotic(z[~small])
    return value, err


@lru_cache(maxsize=1)
def _ei_log2() -> Tuple[float, float]:
    value, err = exponential_integral(math.log(2.0))
    return float(value[0]), float(err[0])


def li(x: float) -> QuadratureResult:
    """li x = ∫_2^x dt/log t through the exponential integral"""
    require(math.isfinite(x) and x >= 2, "li", "x", x, "must be finite and at least 2")
    if x == 2:
        return QuadratureResult(value=0.0, abs_err_estimate=0.0, method="exponential-integral")
    base, base_err = _ei_log2()
    upper, upper_err = exponential_integral(math.log(x))
    value = float(upper[0]) - base
    err = float(upper_err[0]) + base_err + UNIT_ROUNDOFF * abs(value)
    return QuadratureResult(value=value, abs_err_estimate=err, method="exponential-integral")


def li_array(xs) -> np.ndarray:
    """li elementwise over an array of points >= 2"""
    xs = np.asarray(xs, dtype=float)
    require(bool(np.all(xs >= 2)), "li_array", "x", float(np.min(xs)), "must be at least 2")
    base, _ = _ei_log2()
    upper, _ = exponential_integral(np.log(xs).ravel())
    return np.where(xs == 2, 0.0, upper.reshape(xs.shape) - base)


def li_quadrature(x: float, rel_tol: float = 1e-13, max_panels: int = 10 ** 6) -> QuadratureResult:
    """li x by adaptive Gauss-Kronrod quadrature of 1/log t over [2, x]"""
    require(x >= 2, "li_quadrature", "x", x, "must be at least 2")
    if x == 2:
        return QuadratureResult(value=0.0, abs_err_estimate=0.0, method="gauss-kronrod-15")
    return adaptive_quad(lambda t: 1.0 / np.log(t), 2.0, float(x),
                         rel_tol=rel_tol, max_panels=max_panels, operation="li_quadrature")


def li_expansion(x: float, m: int) -> ExpansionEval:
    """x·Σ_{r=0}^{m} r!/log^{r+1} x"""
    require(x > 1, "li_expansion", "x", x, "must exceed 1")
    require(m >= 0, "li_expansion", "m", m, "must be non-negative")
    log_x = math.log(x)
    terms = [x * math.factorial(r) / log_x ** (r + 1) for r in range(m + 1)]
    return ExpansionEval(x=x, order=m, value=math.fsum(terms), last_term_magnitude=abs(terms[-1]))


def recip_li_expansion(x: float, m: int, k: KTable) -> ExpansionEval:
    """(1/x)·(log x - 1 - Σ_{r=1}^{m} k_r/log^r x), the expansion of 1/li x"""
    require(x > 1, "recip_li_expansion", "x", x, "must exceed 1")
    require(m >= 1, "recip_li_expansion", "m", m, "must be at least 1")
    require(k.covers(m), "recip_li_expansion", "k", k.m, f"table must cover k_{m}")
    log_x = math.log(x)
    corrections = [float(k.k(r)) / log_x ** r for r in range(1, m + 1)]
    value = math.fsum([log_x, -1.0] + [-c for c in corrections]) / x
    return ExpansionEval(x=x, order=m, value=value, last_term_magnitude=corrections[-1] / x)
