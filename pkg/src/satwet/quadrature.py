"""Globally adaptive Gauss-Kronrod (7, 15) quadrature.

Small and dependency-free so that it can serve as an independent oracle
for the closed-form pass energy.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

# QUADPACK qk15 abscissae (non-negative half) and weights.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


class QuadratureError(RuntimeError):
    """Raised when the requested tolerance is not met within the panel budget."""


def gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod panel on [a, b]; returns (Kronrod estimate, |K - G|)."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(centre)
    kronrod = _WGK[7] * fc
    gauss = _WG[3] * fc
    for j in range(7):
        dx = half * _XGK[j]
        pair = f(centre - dx) + f(centre + dx)
        kronrod += _WGK[j] * pair
        if j % 2 == 1:
            gauss += _WG[j // 2] * pair
    return kronrod * half, abs((kronrod - gauss) * half)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    max_panels: int = 2000,
) -> tuple[float, float]:
    """Integrate ``f`` over [a, b] to ``max(abs_tol, rel_tol*|I|)``.

    The panel with the largest error estimate is bisected until the summed
    error estimate meets the target. Returns ``(integral, error_estimate)``.
    """
    if a == b:
        return 0.0, 0.0
    if b < a:
        value, err = integrate(f, b, a, rel_tol, abs_tol, max_panels)
        return -value, err

    value, err = gk15(f, a, b)
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if len(heap) >= max_panels:
            raise QuadratureError(
                f"tolerance not met after {max_panels} panels "
                f"(estimate {total!r}, error {total_err!r})"
            )
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = gk15(f, lo, mid)
        v2, e2 = gk15(f, mid, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
    # re-sum to shed the drift of the running updates
    total = math.fsum(item[3] for item in heap)
    return total, total_err
