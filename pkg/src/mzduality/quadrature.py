"""Globally adaptive tensor-product Gauss-Legendre quadrature on a rectangle.

The integrand is called with flat coordinate arrays (xs, ys) and must return
one value per point, which lets the compiled field kernels do the work.
Each panel is estimated with nested-order tensor rules; the panel with the
largest error estimate is split in four until the summed error estimate
drops below tolerance or the panel budget runs out.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Callable

import numpy as np

from .errors import QuadratureConvergenceError

_LOW_ORDER = 8
_HIGH_ORDER = 16

_rule_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _rule_cache:
        _rule_cache[order] = np.polynomial.legendre.leggauss(order)
    return _rule_cache[order]


def _tensor_estimate(f, x0, x1, y0, y1, order):
    nodes, weights = _rule(order)
    hx = 0.5 * (x1 - x0)
    hy = 0.5 * (y1 - y0)
    xs = 0.5 * (x1 + x0) + hx * nodes
    ys = 0.5 * (y1 + y0) + hy * nodes
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    vals = np.asarray(f(gx.ravel(), gy.ravel()), dtype=np.float64)
    vals = vals.reshape(order, order)
    return hx * hy * float(weights @ vals @ weights)


def _panel(f, x0, x1, y0, y1):
    coarse = _tensor_estimate(f, x0, x1, y0, y1, _LOW_ORDER)
    fine = _tensor_estimate(f, x0, x1, y0, y1, _HIGH_ORDER)
    return fine, abs(fine - coarse)


def integrate_rectangle(f: Callable[[np.ndarray, np.ndarray], np.ndarray],
                        x0: float, x1: float, y0: float, y1: float,
                        rtol: float = 1e-8,
                        scale: float = 0.0,
                        max_panels: int = 4096,
                        initial_split: int = 4) -> float:
    """Integrate ``f`` over [x0, x1] x [y0, y1].

    Convergence: sum of panel error estimates <= rtol * max(|integral|,
    scale).  ``scale`` guards the criterion for integrals that are tiny
    relative to the natural magnitude of the problem (e.g. destructive
    interference); callers pass the incoherent-power scale.

    Raises QuadratureConvergenceError (carrying the achieved tolerance and
    the best value) if ``max_panels`` is exhausted.
    """
    if not (x1 > x0 and y1 > y0):
        raise ValueError("empty integration rectangle")

    counter = itertools.count()
    heap = []
    total = 0.0
    err_sum = 0.0
    xs = np.linspace(x0, x1, initial_split + 1)
    ys = np.linspace(y0, y1, initial_split + 1)
    n_panels = 0
    for i in range(initial_split):
        for j in range(initial_split):
            q, e = _panel(f, xs[i], xs[i + 1], ys[j], ys[j + 1])
            total += q
            err_sum += e
            heapq.heappush(heap, (-e, next(counter),
                                  xs[i], xs[i + 1], ys[j], ys[j + 1], q))
            n_panels += 1

    while True:
        reference = max(abs(total), scale)
        if err_sum <= rtol * reference:
            return total
        if n_panels + 3 > max_panels:
            achieved = err_sum / reference if reference > 0.0 else float("inf")
            raise QuadratureConvergenceError(
                f"quadrature did not reach rtol={rtol:g} within "
                f"{max_panels} panels (achieved {achieved:g})",
                achieved_rtol=achieved, value=total)

        neg_e, _, px0, px1, py0, py1, pq = heapq.heappop(heap)
        total -= pq
        err_sum += neg_e  # neg_e = -error of the popped panel
        xm = 0.5 * (px0 + px1)
        ym = 0.5 * (py0 + py1)
        for cx0, cx1 in ((px0, xm), (xm, px1)):
            for cy0, cy1 in ((py0, ym), (ym, py1)):
                q, e = _panel(f, cx0, cx1, cy0, cy1)
                total += q
                err_sum += e
                heapq.heappush(heap, (-e, next(counter), cx0, cx1, cy0, cy1, q))
        n_panels += 3
