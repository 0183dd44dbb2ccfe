"""Eigenvalues of small Hermitian Gram matrices and von Neumann entropy.

The ensemble density operator S_xi has the same nonzero spectrum as the
prior-weighted Gram matrix, so everything here works on M x M matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constellation import WeightedGram
from .errors import DomainError, NoConvergence

OFF_DIAG_TOL = 1e-13
CLAMP_TOL = 1e-10
MAX_SWEEPS = 60


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending, each in [0, 1], summing to 1."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float)
        if lam.ndim != 1:
            raise DomainError("spectrum must be a vector")
        if np.any(lam < 0) or np.any(lam > 1):
            raise DomainError(f"eigenvalues must lie in [0, 1]: {lam}")
        if abs(lam.sum() - 1.0) > CLAMP_TOL:
            raise DomainError(f"eigenvalues must sum to 1, sum to {lam.sum()!r}")
        lam = np.sort(lam)[::-1].copy()
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    def __len__(self):
        return self.lambdas.size

    @property
    def positive(self) -> np.ndarray:
        return self.lambdas[self.lambdas > 0]


def jacobi_eigenvalues(mats: np.ndarray, tol: float = OFF_DIAG_TOL,
                       max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a stack of Hermitian matrices by cyclic Jacobi rotations.

    Parameters
    ----------
    mats : ndarray, shape (N, M, M) or (M, M)
        Complex Hermitian matrices.
    tol : float
        Sweeps stop once every matrix has off-diagonal Frobenius norm below
        ``tol``.

    Returns
    -------
    ndarray, shape (N, M) or (M,)
        Unsorted eigenvalues (the converged diagonals).
    """
    a = np.array(mats, dtype=complex)
    single = a.ndim == 2
    if single:
        a = a[None]
    n, m, _ = a.shape
    iu = np.triu_indices(m, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=1))
        if np.all(off < tol):
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[:, p, q]
                r = np.abs(apq)
                live = r > 0.0
                phase = np.ones(n, dtype=complex)
                phase[live] = apq[live] / r[live]
                t = np.zeros(n)
                rr = r[live]
                theta = (a[live, q, q].real - a[live, p, p].real) / (2.0 * rr)
                t[live] = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag phase fix (rotate a_pq onto the real axis) then a real rotation
                cp, cq = a[:, :, p].copy(), a[:, :, q].copy()
                ph = phase.conj()
                a[:, :, p] = c[:, None] * cp - (s * ph)[:, None] * cq
                a[:, :, q] = s[:, None] * cp + (c * ph)[:, None] * cq
                rp, rq = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = c[:, None] * rp - (s * phase)[:, None] * rq
                a[:, q, :] = s[:, None] * rp + (c * phase)[:, None] * rq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    return w[0] if single else w


def clamp_eigenvalues(w: np.ndarray) -> np.ndarray:
    """Zero out rounding negatives and sort each row descending."""
    w = np.clip(w, 0.0, 1.0)
    return -np.sort(-w, axis=-1)


def hermitian_eigenvalues(g: WeightedGram) -> Spectrum:
    entries = g.entries if isinstance(g, WeightedGram) else np.asarray(g)
    w = clamp_eigenvalues(jacobi_eigenvalues(entries))
    return Spectrum(w)


def batch_spectra(grams: np.ndarray) -> np.ndarray:
    """Clamped, descending eigenvalues for an (N, M, M) stack of Gram matrices."""
    return clamp_eigenvalues(jacobi_eigenvalues(grams))


def binary_eigenvalues_closed_form(xi1: float, kappa: float) -> Spectrum:
    """Eigenvalues of [[xi, k sqrt(xi(1-xi))], [k sqrt(xi(1-xi)), 1-xi]]."""
    if not (0.0 <= xi1 <= 1.0) or not (0.0 <= kappa <= 1.0):
        raise DomainError(f"need xi1, kappa in [0, 1], got {xi1}, {kappa}")
    rad = 1.0 - 4.0 * (1.0 - kappa * kappa) * xi1 * (1.0 - xi1)
    if rad < -1e-12:
        raise DomainError(f"negative radicand {rad}")
    root = math.sqrt(max(rad, 0.0))
    return Spectrum([0.5 * (1.0 + root), 0.5 * (1.0 - root)])


def entropy_of(lam: np.ndarray) -> np.ndarray:
    """-sum lam ln lam along the last axis, with 0 ln 0 = 0."""
    lam = np.asarray(lam, dtype=float)
    safe = np.where(lam > 0, lam, 1.0)
    return -np.sum(np.where(lam > 0, lam * np.log(safe), 0.0), axis=-1)


def von_neumann_entropy(sp: Spectrum) -> float:
    """Entropy in nats."""
    return float(entropy_of(sp.lambdas))
