"""One-dimensional golden-section search and simplex prior search."""
from __future__ import annotations

import itertools
import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_GRID_POINTS = 200_000
# moves that gain less than this are rounding noise
IMPROVE_TOL = 1e-14


def golden_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10):
    """Maximize a unimodal ``f`` on [a, b]; endpoints are candidates too.

    Returns ``(x, f(x))``.
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    for end in (a, b):
        fe = f(end)
        if fe > fx:
            x, fx = end, fe
    return x, fx


def golden_max_batch(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray,
                     tol: float = 1e-10):
    """Vectorized golden-section: maximizes f elementwise over [a_k, b_k]."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    width = float(np.max(b - a)) if a.size else 0.0
    steps = 0 if width <= tol else math.ceil(math.log(tol / width) / math.log(INV_PHI))
    for _ in range(steps):
        left = fc >= fd
        # left: keep [a, d]; right: keep [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = b - INV_PHI * (b - a)
        nd = a + INV_PHI * (b - a)
        new_pt = np.where(left, nc, nd)
        fnew = f(new_pt)
        c, d, fc, fd = (np.where(left, nc, d), np.where(left, c, nd),
                        np.where(left, fnew, fd), np.where(left, fc, fnew))
    x = np.where(fc >= fd, c, d)
    fx = np.maximum(fc, fd)
    for end in (a, b):
        fe = f(end)
        better = fe > fx
        x = np.where(better, end, x)
        fx = np.where(better, fe, fx)
    return x, fx


def simplex_grid(m: int, steps: int) -> np.ndarray:
    """All points of the (m-1)-simplex with coordinates in multiples of 1/steps.

    Rows are in lexicographic order of the integer compositions.
    """
    if m == 1:
        return np.ones((1, 1))
    # stars and bars: choose m-1 bar positions among steps+m-1 slots
    bars = np.array(list(itertools.combinations(range(steps + m - 1), m - 1)), dtype=int)
    edges = np.concatenate([np.full((len(bars), 1), -1), bars,
                            np.full((len(bars), 1), steps + m - 1)], axis=1)
    counts = np.diff(edges, axis=1) - 1
    return counts[::-1] / steps


def grid_steps(m: int, steps: int) -> int:
    """Largest resolution <= ``steps`` whose simplex grid stays tractable."""
    while steps > 1 and math.comb(steps + m - 1, m - 1) > MAX_GRID_POINTS:
        steps -= 1
    return steps


def refine_on_simplex(f: Callable[[np.ndarray], float], x0: np.ndarray, fx0: float,
                      radius: float, tol: float = 1e-6, max_cycles: int = 500):
    """Pairwise mass-exchange golden-section ascent from ``x0``.

    Each coordinate move shifts probability between two states i < j inside
    a window of half-width ``radius``; a cycle visits every pair. Stops once
    a full cycle moves no coordinate by more than ``tol``.
    """
    x = np.array(x0, dtype=float)
    fx = fx0
    m = x.size
    pairs = list(itertools.combinations(range(m), 2))
    for _ in range(max_cycles):
        moved = 0.0
        for i, j in pairs:
            total = x[i] + x[j]
            if total <= 0.0:
                continue
            lo, hi = max(0.0, x[i] - radius), min(total, x[i] + radius)

            def along(t, i=i, j=j, total=total):
                y = x.copy()
                y[i], y[j] = t, total - t
                return f(y)

            t, ft = golden_max(along, lo, hi, tol=tol / 4)
            if ft > fx + IMPROVE_TOL:
                moved = max(moved, abs(t - x[i]))
                x[i], x[j] = t, total - t
                fx = ft
        if moved <= tol:
            break
    return x, fx


def maximize_on_simplex(f_batch: Callable[[np.ndarray], np.ndarray], m: int,
                        steps: int = 100, tol: float = 1e-6):
    """Grid search over the simplex followed by local refinement.

    ``f_batch`` maps an (N, m) array of priors to N objective values. The
    uniform prior is the incumbent; grid points replace it only when better
    by more than rounding noise, so flat objectives return the uniform prior.
    """
    uniform = np.full(m, 1.0 / m)
    best_x, best_f = uniform, float(f_batch(uniform[None])[0])
    steps = grid_steps(m, steps)
    grid = simplex_grid(m, steps)
    vals = f_batch(grid)
    k = int(np.argmax(vals))
    if vals[k] > best_f + IMPROVE_TOL:
        best_x, best_f = grid[k], float(vals[k])

    def f_one(y):
        return float(f_batch(y[None])[0])

    x, fx = refine_on_simplex(f_one, best_x, best_f, radius=1.0 / steps, tol=tol)
    return x, fx
