"""
Adaptive Gauss-Kronrod quadrature

Panels are integrated with the 7-point Gauss / 15-point Kronrod pair; the
panel with the largest error estimate is bisected until the total error
estimate meets the tolerance. Integrands must accept numpy arrays.
"""

import heapq
import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..models.numeric import QuadratureResult
from .errors import NumericalError, require

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# Kronrod abscissae (positive half, descending) and weights, QUADPACK qk15
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the abscissae _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[:7][::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[:7][::-1]])
GAUSS_WEIGHTS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    GAUSS_WEIGHTS[_i] = _w
    GAUSS_WEIGHTS[14 - _i] = _w
GAUSS_WEIGHTS[7] = _WG[3]

EPS = np.finfo(float).eps
_CHUNK = 1 << 16


def _evaluate(f: Integrand, nodes: np.ndarray) -> np.ndarray:
    values = np.asarray(f(nodes), dtype=float)
    return np.broadcast_to(values, nodes.shape)


def gauss_kronrod_panels(f: Integrand, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate f over each panel [a_i, b_i]

    Returns (integral, error estimate, roundoff floor) per panel; the error
    estimate follows QUADPACK's scaling of |K15 - G7|.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    nodes = center[:, None] + half[:, None] * NODES[None, :]
    fv = _evaluate(f, nodes)
    if not np.all(np.isfinite(fv)):
        raise NumericalError("gauss_kronrod", "integrand is not finite on the panel",
                             {"a": float(a.min()), "b": float(b.max())})

    kronrod = half * (fv @ KRONROD_WEIGHTS)
    gauss = half * (fv @ GAUSS_WEIGHTS)
    mean = (fv @ KRONROD_WEIGHTS) / 2.0
    resasc = np.abs(half) * (np.abs(fv - mean[:, None]) @ KRONROD_WEIGHTS)
    resabs = np.abs(half) * (np.abs(fv) @ KRONROD_WEIGHTS)

    err = np.abs(kronrod - gauss)
    scaled = resasc * np.minimum(1.0, np.power(200.0 * err / np.where(resasc > 0, resasc, 1.0), 1.5))
    err = np.where(resasc > 0, scaled, err)
    floor = 50.0 * EPS * resabs
    return kronrod, np.maximum(err, floor), floor


class _Panel:
    __slots__ = ("a", "b", "value", "err", "floor")

    def __init__(self, a: float, b: float, value: float, err: float, floor: float):
        self.a = a
        self.b = b
        self.value = value
        self.err = err
        self.floor = floor

    def refinable(self) -> bool:
        return self.err > self.floor and self.b - self.a > 4.0 * EPS * max(abs(self.a), abs(self.b))


def adaptive_quad(
    f: Integrand,
    a: float,
    b: float,
    *,
    breakpoints: Optional[Sequence[float]] = None,
    rel_tol: float = 1e-13,
    abs_tol: float = 0.0,
    max_panels: int = 10 ** 6,
    operation: str = "adaptive_quad",
) -> QuadratureResult:
    """Adaptive bisection of ∫_a^b f(t) dt

    Breakpoints, when given, seed the initial panels (the integrand may be
    discontinuous across them). Raises NumericalError when the panel cap is
    reached before the tolerance max(abs_tol, rel_tol*|value|) is met.
    """
    require(a < b, operation, "interval", (a, b), "lower limit must be below upper limit")

    edges_arr = np.array([a, b], dtype=float)
    if breakpoints is not None:
        inner = np.asarray(breakpoints, dtype=float)
        edges_arr = np.concatenate(([a], inner[(inner > a) & (inner < b)], [b]))
    edges_arr = np.unique(edges_arr)
    if edges_arr.size - 1 > max_panels:
        raise NumericalError(operation, "initial panels exceed the panel cap",
                             {"panels": edges_arr.size - 1, "max_panels": max_panels})

    panels: List[_Panel] = []
    for start in range(0, edges_arr.size - 1, _CHUNK):
        lo = edges_arr[start:start + _CHUNK]
        hi = edges_arr[start + 1:start + _CHUNK + 1]
        lo = lo[:hi.size]
        values, errs, floors = gauss_kronrod_panels(f, lo, hi)
        panels.extend(_Panel(float(x), float(y), float(v), float(e), float(r))
                      for x, y, v, e, r in zip(lo, hi, values, errs, floors))

    heap = [(-p.err, i) for i, p in enumerate(panels) if p.refinable()]
    heapq.heapify(heap)
    total = math.fsum(p.value for p in panels)
    total_err = math.fsum(p.err for p in panels)

    while total_err > max(abs_tol, rel_tol * abs(total)) and heap:
        if len(panels) >= max_panels:
            raise NumericalError(operation, "panel cap reached before tolerance", {
                "panels": len(panels), "error": total_err,
                "tolerance": max(abs_tol, rel_tol * abs(total)), "interval": (a, b),
            })
        _, index = heapq.heappop(heap)
        parent = panels[index]
        mid = 0.5 * (parent.a + parent.b)
        values, errs, floors = gauss_kronrod_panels(
            f, np.array([parent.a, mid]), np.array([mid, parent.b])
        )
        left = _Panel(parent.a, mid, float(values[0]), float(errs[0]), float(floors[0]))
        right = _Panel(mid, parent.b, float(values[1]), float(errs[1]), float(floors[1]))
        total += left.value + right.value - parent.value
        total_err += left.err + right.err - parent.err

        panels[index] = left
        panels.append(right)
        for idx, child in ((index, left), (len(panels) - 1, right)):
            if child.refinable():
                heapq.heappush(heap, (-child.err, idx))

    total = math.fsum(p.value for p in panels)
    total_err = math.fsum(p.err for p in panels)
    logger.debug("%s on [%g, %g]: %d panels, value=%r, err=%.3g",
                 operation, a, b, len(panels), total, total_err)
    return QuadratureResult(value=total, abs_err_estimate=total_err,
                            panels=len(panels), method="gauss-kronrod-15")
