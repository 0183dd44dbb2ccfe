"""Quantum random-coding exponent, cutoff rate and block error bound.

All rates and exponents are in nats per channel symbol. For a prior xi with
Gram spectrum lambda,

    mu(s, xi) = -ln sum_j lambda_j^(1+s),
    E_Qr(R)   = max_{0<=s<=1} max_xi [mu(s, xi) - s R],
    R_0       = max_xi mu(1, xi).
"""
from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constellation import PriorVector, SignalSet, weighted_grams
from .errors import DomainError
from .search import grid_steps, maximize_on_simplex, simplex_grid
from .spectra import Spectrum, batch_spectra, entropy_of

GRID_STEPS = 100
PRIOR_TOL = 1e-6
BISECT_ITERS = 60


def _check_s(s):
    if np.any(np.asarray(s) < 0) or np.any(np.asarray(s) > 1):
        raise DomainError(f"s must lie in [0, 1], got {s}")


def _lam(sp) -> np.ndarray:
    return sp.lambdas if isinstance(sp, Spectrum) else np.asarray(sp, dtype=float)


def _power_sums(s, lam):
    """sum lam^(1+s) and sum lam^(1+s) ln lam over positive entries (last axis)."""
    s = np.asarray(s, dtype=float)[..., None]
    pos = lam > 0
    safe = np.where(pos, lam, 1.0)
    w = np.where(pos, safe ** (1.0 + s), 0.0)
    return w.sum(axis=-1), (w * np.log(safe)).sum(axis=-1)


def mu_batch(s, lam: np.ndarray) -> np.ndarray:
    z, _ = _power_sums(s, lam)
    return np.where(np.asarray(s) == 0, 0.0, -np.log(z))


def dmu_ds_batch(s, lam: np.ndarray) -> np.ndarray:
    z, zl = _power_sums(s, lam)
    return -zl / z


def mu(s: float, sp) -> float:
    _check_s(s)
    return float(mu_batch(s, _lam(sp)))


def dmu_ds(s: float, sp) -> float:
    _check_s(s)
    return float(dmu_ds_batch(s, _lam(sp)))


def optimize_s_batch(rate: float, lam: np.ndarray):
    """Maximize mu(s) - s*rate over s in [0, 1] for each row of ``lam``.

    mu is concave in s, so its slope is nonincreasing and the stationary
    point is bracketed by the slopes at s=0 (the entropy) and s=1.
    """
    lam = np.atleast_2d(lam)
    n = lam.shape[0]
    d1 = dmu_ds_batch(np.ones(n), lam)
    h = dmu_ds_batch(np.zeros(n), lam)
    lo, hi = np.zeros(n), np.ones(n)
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        up = dmu_ds_batch(mid, lam) > rate
        lo = np.where(up, mid, lo)
        hi = np.where(up, hi, mid)
    s = np.where(d1 >= rate, 1.0, np.where(h <= rate, 0.0, 0.5 * (lo + hi)))
    value = np.where(s == 0.0, 0.0, mu_batch(s, lam) - s * rate)
    return s, value


def _slope(s: float, lam) -> float:
    z = zl = 0.0
    for x in lam:
        w = x ** (1.0 + s)
        z += w
        zl += w * math.log(x)
    return -zl / z


def optimize_s(rate: float, sp) -> tuple[float, float]:
    """Scalar counterpart of :func:`optimize_s_batch`; returns (s_opt, value)."""
    if rate < 0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    lam = [float(x) for x in _lam(sp) if x > 0]
    if _slope(1.0, lam) >= rate:
        s = 1.0
    elif _slope(0.0, lam) <= rate:
        return 0.0, 0.0
    else:
        lo, hi = 0.0, 1.0
        while hi - lo > 1e-13:
            mid = 0.5 * (lo + hi)
            if _slope(mid, lam) > rate:
                lo = mid
            else:
                hi = mid
        s = 0.5 * (lo + hi)
    return s, -math.log(sum(x ** (1.0 + s) for x in lam)) - s * rate


# prior objectives ---------------------------------------------------------

@dataclass(frozen=True)
class VonNeumann:
    def __call__(self, lam):
        return entropy_of(lam)


@dataclass(frozen=True)
class MuAtS:
    s: float

    def __call__(self, lam):
        return mu_batch(np.full(lam.shape[0], self.s), lam)


@dataclass(frozen=True)
class ExponentAtRate:
    rate: float

    def __call__(self, lam):
        if lam.shape[0] == 1:
            return np.array([optimize_s(self.rate, lam[0])[1]])
        return optimize_s_batch(self.rate, lam)[1]


def prior_spectra(s_set: SignalSet, priors: np.ndarray) -> np.ndarray:
    return batch_spectra(weighted_grams(s_set, np.atleast_2d(priors)))


@functools.lru_cache(maxsize=16)
def _grid_spectra(s_set: SignalSet, steps: int):
    grid = simplex_grid(s_set.size, steps)
    return grid, prior_spectra(s_set, grid)


def _maximize_prior(s_set: SignalSet, f_batch):
    """Shared prior search. ``f_batch`` maps (priors, spectra|None) -> values."""
    m = s_set.size
    if s_set.kind.symmetric:
        u = np.full(m, 1.0 / m)
        return PriorVector(u), float(f_batch(u[None])[0])
    x, fx = maximize_on_simplex(f_batch, m, steps=GRID_STEPS, tol=PRIOR_TOL)
    return PriorVector.normalized(x), float(fx)


def optimize_priors(s_set: SignalSet, objective) -> tuple[PriorVector, float]:
    """Maximize a spectral objective over the prior simplex.

    ``objective`` is one of :class:`VonNeumann`, :class:`MuAtS`,
    :class:`ExponentAtRate`. Symmetric constellations return the uniform
    prior directly; others use a 1/100 simplex grid plus golden-section
    refinement.
    """
    if isinstance(objective, MuAtS):
        _check_s(objective.s)
    steps = grid_steps(s_set.size, GRID_STEPS)
    cached = None if s_set.kind.symmetric else _grid_spectra(s_set, steps)

    def f_batch(priors):
        if cached is not None and priors.shape == cached[0].shape \
                and np.array_equal(priors, cached[0]):
            return objective(cached[1])
        return objective(prior_spectra(s_set, priors))

    return _maximize_prior(s_set, f_batch)


def max_entropy(s_set: SignalSet) -> tuple[float, PriorVector]:
    """max over priors of H(S_xi): the rate where E_Qr reaches zero."""
    xi, h = optimize_priors(s_set, VonNeumann())
    return h, xi


# exponent -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExponentPoint:
    rate: float
    value: float
    s_opt: float
    xi_opt: PriorVector

    @property
    def regime(self) -> str:
        """'s1' on the straight-line part, 'zero' past capacity, else 'interior'."""
        if self.s_opt == 1.0:
            return "s1"
        if self.s_opt == 0.0:
            return "zero"
        return "interior"


def reliability_at_rate(s_set: SignalSet, rate: float) -> ExponentPoint:
    if not rate >= 0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    xi, _ = optimize_priors(s_set, ExponentAtRate(rate))
    lam = prior_spectra(s_set, xi.xi[None])[0]
    s, v = optimize_s(rate, lam)
    return ExponentPoint(rate=float(rate), value=max(v, 0.0), s_opt=s, xi_opt=xi)


@dataclass(frozen=True, eq=False)
class ExponentCurve:
    points: list
    signal: str
    ns: float | None
    grid: dict = field(default_factory=dict)

    @property
    def rates(self) -> np.ndarray:
        return np.array([p.rate for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    @property
    def s_opts(self) -> np.ndarray:
        return np.array([p.s_opt for p in self.points])


def rate_grid(r_min: float, r_max: float, n_points: int) -> np.ndarray:
    if not (0 <= r_min < r_max) or n_points < 2:
        raise DomainError("need 0 <= r_min < r_max and n_points >= 2")
    return np.linspace(r_min, r_max, n_points)


def parallel_map(fn, items, threads: int = 1) -> list:
    """Order-preserving map, optionally over a thread pool."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def reliability_curve(s_set: SignalSet, r_min: float, r_max: float, n_points: int,
                      threads: int = 1) -> ExponentCurve:
    rates = rate_grid(r_min, r_max, n_points)
    pts = parallel_map(lambda r: reliability_at_rate(s_set, float(r)), rates, threads)
    return ExponentCurve(pts, s_set.name, s_set.ns,
                         {"r_min": r_min, "r_max": r_max, "n_points": n_points})


def cutoff_rate(s_set: SignalSet) -> tuple[float, PriorVector]:
    """R_0 = max_xi -ln sum_ij xi_i xi_j |<psi_i|psi_j>|^2.

    Evaluated from squared overlaps directly, without any eigenvalues.
    """
    k = np.abs(s_set.matrix) ** 2

    def f_batch(priors):
        q = np.einsum("ni,ij,nj->n", priors, k, priors)
        return -np.log(q)

    xi, r0 = _maximize_prior(s_set, f_batch)
    return max(r0, 0.0), xi


def error_probability_bound(n: int, rate: float, s_set: SignalSet) -> float:
    """Block error bound 2 exp(-n E_Qr(R)); may exceed 1."""
    if n < 1:
        raise DomainError(f"block length must be >= 1, got {n}")
    e = reliability_at_rate(s_set, rate).value
    return 2.0 * math.exp(-n * e)
