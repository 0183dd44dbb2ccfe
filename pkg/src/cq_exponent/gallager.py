"""Classical comparison: Helstrom-measured binary channel and Gallager's exponent.

E(R) = max_{rho, xi} [E0(rho, xi) - rho R] with
E0(rho, xi) = -ln sum_j (sum_i xi_i p_ij^(1/(1+rho)))^(1+rho).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .constellation import Kind, PriorVector, SignalSet, as_prior
from .errors import DegenerateChannel, DimensionMismatch, DomainError, UnsupportedKind
from .search import golden_max, golden_max_batch, grid_steps, maximize_on_simplex

ROW_TOL = 1e-12
RHO_TOL = 1e-10
PRIOR_STEPS = 200
C1_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """p[i, j] = probability of output j given input i."""

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 2:
            raise DimensionMismatch("channel matrix must be 2-D")
        if np.any(p < 0) or np.any(p > 1):
            raise DomainError("channel probabilities must lie in [0, 1]")
        if np.any(np.abs(p.sum(axis=1) - 1.0) > ROW_TOL):
            raise DomainError(f"rows must sum to 1: {p.sum(axis=1)}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def inputs(self) -> int:
        return self.p.shape[0]


Channel = Union[StochasticMatrix, Callable[[np.ndarray], StochasticMatrix]]


def helstrom_matrices(xi1, kappa: float) -> np.ndarray:
    """Vectorized Helstrom channel for priors (xi1, 1-xi1); shape (..., 2, 2).

    With lam = xi1/xi2 and F = sqrt(((1+lam)/2)^2 - lam kappa^2) the error
    entries are
        p12 = (2F - lam + 2 kappa^2 - 1) / 4F
        p21 = (2F - lam + 2 lam kappa^2 - 1) / 4F,
    evaluated here in the rationalized form to avoid cancellation.
    """
    xi1 = np.asarray(xi1, dtype=float)
    k2 = kappa * kappa
    lam = xi1 / (1.0 - xi1)
    f = np.sqrt(((1.0 + lam) / 2.0) ** 2 - lam * k2)
    p12 = k2 * (1.0 - k2) / (f * (2.0 * f + lam + 1.0 - 2.0 * k2))
    p21 = lam * lam * k2 * (1.0 - k2) / (f * (2.0 * f + lam + 1.0 - 2.0 * lam * k2))
    p12 = np.clip(p12, 0.0, 1.0)
    p21 = np.clip(p21, 0.0, 1.0)
    return np.stack([np.stack([1.0 - p12, p12], -1), np.stack([p21, 1.0 - p21], -1)], -2)


def helstrom_channel(xi1: float, kappa: float) -> StochasticMatrix:
    """Binary pure-state channel read out by the minimum-error projectors."""
    if not (0.0 <= kappa <= 1.0) or not (0.0 <= xi1 <= 1.0):
        raise DomainError(f"need xi1, kappa in [0, 1], got {xi1}, {kappa}")
    if kappa == 1.0 or xi1 in (0.0, 1.0):
        raise DegenerateChannel("measurement undefined for identical states or a one-point prior")
    return StochasticMatrix(helstrom_matrices(xi1, kappa))


def helstrom_family(kappa: float) -> Callable[[np.ndarray], StochasticMatrix]:
    """Prior-coupled channel: the Helstrom projectors are re-derived for each prior."""
    if not 0.0 <= kappa < 1.0:
        raise DegenerateChannel(f"need 0 <= kappa < 1, got {kappa}")

    def channel(xi):
        return helstrom_channel(float(np.asarray(xi)[0]), kappa)

    channel.kappa = kappa
    return channel


def binary_kappa(s_set: SignalSet) -> float:
    if s_set.kind is not Kind.BINARY:
        raise UnsupportedKind(f"Helstrom comparison is defined for binary sets, not {s_set.name}")
    return min(abs(s_set.overlap(0, 1)), 1.0)


def _e0(rho, xi, p):
    """E0 for broadcastable rho (N,), xi (N, r), p (N, r, k) or (r, k)."""
    rho = np.asarray(rho, dtype=float)
    a = 1.0 / (1.0 + rho)
    inner = np.einsum("...i,...ij->...j", xi, p ** a[..., None, None])
    e0 = -np.log(np.sum(inner ** (1.0 + rho)[..., None], axis=-1))
    return np.where(rho == 0.0, 0.0, e0)


def gallager_e0(rho: float, xi, ch: StochasticMatrix) -> float:
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho}")
    xi = as_prior(xi)
    if len(xi) != ch.inputs:
        raise DimensionMismatch(f"prior length {len(xi)} vs {ch.inputs} channel inputs")
    if rho == 0.0:
        return 0.0
    return float(_e0(rho, xi.xi, ch.p))


def mutual_information(xi, ch: StochasticMatrix) -> float:
    """I(X;Y) in nats with 0 ln 0 = 0."""
    xi = as_prior(xi)
    if len(xi) != ch.inputs:
        raise DimensionMismatch(f"prior length {len(xi)} vs {ch.inputs} channel inputs")
    return float(_mutual_information(xi.xi, ch.p))


def _mutual_information(xi, p):
    q = np.einsum("...i,...ij->...j", xi, p)
    joint = xi[..., :, None] * p
    ratio = np.where(joint > 0, p / np.where(q[..., None, :] > 0, q[..., None, :], 1.0), 1.0)
    return np.sum(np.where(joint > 0, joint * np.log(ratio), 0.0), axis=(-2, -1))


@dataclass(frozen=True, eq=False)
class GallagerPoint:
    rate: float
    value: float
    rho_opt: float
    xi_opt: PriorVector


def _channel_batch(ch: Channel, priors: np.ndarray):
    """Channel matrices for each prior row, and a mask of usable rows."""
    if isinstance(ch, StochasticMatrix):
        return np.broadcast_to(ch.p, (len(priors),) + ch.p.shape), np.ones(len(priors), bool)
    ok = np.all(priors > 0, axis=1)
    kappa = getattr(ch, "kappa", None)
    mats = np.empty((len(priors), 2, 2))
    if kappa is not None:
        mats[ok] = helstrom_matrices(priors[ok, 0], kappa)
    else:
        for n in np.flatnonzero(ok):
            mats[n] = ch(priors[n]).p
    mats[~ok] = np.eye(2)
    return mats, ok


def _best_rho(rate: float, priors: np.ndarray, ch: Channel):
    mats, ok = _channel_batch(ch, priors)

    def objective(rho):
        return np.where(ok, _e0(rho, priors, mats) - rho * rate, -rho * rate)

    return golden_max_batch(objective, np.zeros(len(priors)), np.ones(len(priors)), tol=RHO_TOL)


def gallager_exponent(rate: float, ch: Channel) -> GallagerPoint:
    """Maximize E0(rho, xi) - rho R over rho in [0, 1] and the prior simplex.

    ``ch`` is either a fixed :class:`StochasticMatrix` or a callable mapping a
    prior to its channel (see :func:`helstrom_family`). A prior on a simplex
    vertex carries no information, so prior-dependent channels are only
    built for interior priors.
    """
    if not rate >= 0:
        raise DomainError(f"rate must be >= 0, got {rate}")
    r = ch.inputs if isinstance(ch, StochasticMatrix) else 2

    def f_batch(priors):
        return _best_rho(rate, priors, ch)[1]

    x, _ = maximize_on_simplex(f_batch, r, steps=grid_steps(r, PRIOR_STEPS), tol=1e-9)
    xi = PriorVector.normalized(x)
    rho, val = _best_rho(rate, xi.xi[None], ch)
    rho, val = float(rho[0]), float(val[0])
    if val <= 0.0:
        return GallagerPoint(float(rate), 0.0, 0.0, xi)
    return GallagerPoint(float(rate), val, rho, xi)


def capacity_c1(s_set: SignalSet) -> tuple[float, PriorVector]:
    """Un-coded capacity: max over priors of I(xi, Helstrom channel at xi).

    The measurement itself depends on the prior, so the channel is rebuilt
    at every candidate xi1.
    """
    kappa = binary_kappa(s_set)
    if kappa >= 1.0:
        return 0.0, PriorVector.uniform(2)

    def info(xi1):
        xi1 = np.atleast_1d(np.asarray(xi1, dtype=float))
        priors = np.stack([xi1, 1.0 - xi1], -1)
        return _mutual_information(priors, helstrom_matrices(xi1, kappa))

    grid = np.arange(1, PRIOR_STEPS) / PRIOR_STEPS
    k = int(np.argmax(info(grid)))
    h = 1.0 / PRIOR_STEPS
    lo, hi = max(grid[k] - h, 1e-12), min(grid[k] + h, 1.0 - 1e-12)
    x, c1 = golden_max(lambda t: float(info(t)[0]), lo, hi, tol=C1_TOL)
    return float(c1), PriorVector([x, 1.0 - x])
