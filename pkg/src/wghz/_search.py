"""Multi-start coordinate ascent over periodic angles.

Each coordinate is maximized by a coarse scan of its full 2*pi period followed
by golden-section refinement around the best scan point.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_SCAN_POINTS = 12


def _golden_max(g: Callable[[float], float], a: float, b: float, tol: float) -> tuple[float, float]:
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - _INV_PHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INV_PHI * (b - a)
            gd = g(d)
    return (c, gc) if gc >= gd else (d, gd)


def coordinate_ascent(
    objective: Callable[[list], float],
    x0: Sequence[float],
    iters: int,
    tol: float = 1e-10,
) -> tuple[float, list]:
    x = [float(v) for v in x0]
    best = objective(x)
    step = 2.0 * math.pi / _SCAN_POINTS
    for _ in range(iters):
        start = best
        for k in range(len(x)):
            orig = x[k]

            def g(t, k=k):
                x[k] = t
                return objective(x)

            scan = [orig + j * step for j in range(_SCAN_POINTS)]
            vals = [best] + [g(t) for t in scan[1:]]
            j = int(np.argmax(vals))
            t, val = _golden_max(g, scan[j] - step, scan[j] + step, tol)
            if val > best:
                best, x[k] = val, t
            else:
                x[k] = orig
        if best - start <= 1e-15:
            break
    return best, x


def multistart(
    objective: Callable[[list], float],
    dim: int,
    restarts: int,
    iters: int,
    seed: int,
    seeds: Iterable[Sequence[float]] = (),
) -> tuple[float, list]:
    """Best local maximum over fixed ``seeds`` plus ``restarts`` random starts.

    Random starts are drawn one at a time from a single generator, so raising
    ``restarts`` only appends starting points and never lowers the result.
    """
    if restarts < 1 or iters < 1:
        raise ValueError("restarts and iters must both be >= 1")
    rng = np.random.default_rng(seed)
    best_val, best_x = -math.inf, []
    starts = [list(s) for s in seeds]
    starts += [list(rng.uniform(0.0, 2.0 * math.pi, size=dim)) for _ in range(restarts)]
    for x0 in starts:
        val, x = coordinate_ascent(objective, x0, iters)
        if val > best_val:
            best_val, best_x = val, x
    return best_val, best_x
