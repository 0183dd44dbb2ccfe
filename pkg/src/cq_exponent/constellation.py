"""Pure-state signal constellations and their prior-weighted Gram matrices.

Only pairwise overlaps enter any downstream formula, so a constellation is
stored as its M x M overlap matrix.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NonHermitian,
    NonUnitDiagonal,
    NotPositiveSemidefinite,
)

PSD_TOL = 1e-9
PRIOR_SUM_TOL = 1e-12


class Kind(enum.Enum):
    BINARY = "binary"
    PSK3 = "psk3"
    ORTH4 = "orth4"
    TERNARY = "ternary"
    CUSTOM = "custom"

    @property
    def symmetric(self) -> bool:
        """Group-covariant kinds whose optimal prior is uniform."""
        return self in (Kind.BINARY, Kind.PSK3, Kind.ORTH4)


@dataclass(frozen=True)
class CoherentAmplitude:
    re: float
    im: float = 0.0

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def photon_number(self) -> float:
        return self.re * self.re + self.im * self.im

    @classmethod
    def from_complex(cls, z: complex) -> CoherentAmplitude:
        return cls(z.real, z.imag)


def coherent_overlap(a: CoherentAmplitude, b: CoherentAmplitude) -> complex:
    """Inner product <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)."""
    za, zb = a.value, b.value
    return cmath.exp(-0.5 * a.photon_number - 0.5 * b.photon_number + za.conjugate() * zb)


@dataclass(frozen=True, eq=False)
class SignalSet:
    """A constellation of ``size`` normalized pure states.

    ``matrix[i, j]`` holds <psi_i|psi_j>. ``ns`` is None for custom sets.
    """

    kind: Kind
    matrix: np.ndarray
    ns: float | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def overlap(self, i: int, j: int) -> complex:
        return complex(self.matrix[i, j])

    @property
    def name(self) -> str:
        return self.kind.value

    def describe(self) -> str:
        if self.ns is None:
            return f"{self.name}(M={self.size})"
        return f"{self.name}(ns={self.ns:g})"


def _coherent_gram(alphas) -> np.ndarray:
    amps = [CoherentAmplitude.from_complex(complex(a)) for a in alphas]
    return np.array([[coherent_overlap(a, b) for b in amps] for a in amps], dtype=complex)


def make_signal_set(kind: Kind | str, ns: float) -> SignalSet:
    """Build one of the built-in constellations at photon number ``ns``."""
    kind = Kind(kind)
    if kind is Kind.CUSTOM:
        raise DomainError("use make_custom_signal_set for custom overlaps")
    if not (ns >= 0 and math.isfinite(ns)):
        raise DomainError(f"photon number must be a finite value >= 0, got {ns}")
    alpha = math.sqrt(ns)
    if kind is Kind.BINARY:
        gram = _coherent_gram([alpha, -alpha])
    elif kind is Kind.PSK3:
        w = cmath.exp(2j * math.pi / 3)
        gram = _coherent_gram([alpha, alpha * w, alpha * w.conjugate()])
    elif kind is Kind.TERNARY:
        gram = _coherent_gram([0.0, alpha, -alpha])
    else:
        # pulse-position states: <psi_i|psi_j> = |<0|alpha>|^2 = e^-ns
        gram = np.full((4, 4), math.exp(-ns), dtype=complex)
        np.fill_diagonal(gram, 1.0)
    np.fill_diagonal(gram, 1.0)
    return SignalSet(kind, gram, float(ns))


def make_custom_signal_set(overlaps) -> SignalSet:
    m = np.asarray(overlaps, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
        raise DimensionMismatch(f"overlap matrix must be square with M >= 2, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, rtol=0, atol=1e-12):
        raise NonHermitian("overlap matrix is not Hermitian")
    if not np.allclose(np.diag(m), 1.0, rtol=0, atol=1e-12):
        raise NonUnitDiagonal("overlap matrix must have unit diagonal")
    lo = np.linalg.eigvalsh(m).min()
    if lo < -PSD_TOL:
        raise NotPositiveSemidefinite(f"overlap matrix has eigenvalue {lo:.3g}")
    return SignalSet(Kind.CUSTOM, m)


@dataclass(frozen=True, eq=False)
class PriorVector:
    xi: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float)
        if xi.ndim != 1 or xi.size < 1:
            raise DimensionMismatch("prior must be a non-empty vector")
        if np.any(xi < 0) or np.any(xi > 1) or not np.all(np.isfinite(xi)):
            raise DomainError(f"prior entries must lie in [0, 1]: {xi}")
        if abs(xi.sum() - 1.0) > PRIOR_SUM_TOL:
            raise DomainError(f"prior must sum to 1, sums to {xi.sum()!r}")
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)

    def __len__(self):
        return self.xi.size

    @classmethod
    def uniform(cls, m: int) -> PriorVector:
        return cls(np.full(m, 1.0 / m))

    @classmethod
    def normalized(cls, w) -> PriorVector:
        """Clip tiny negatives from simplex arithmetic and renormalize."""
        w = np.clip(np.asarray(w, dtype=float), 0.0, None)
        return cls(w / w.sum())


def as_prior(xi) -> PriorVector:
    return xi if isinstance(xi, PriorVector) else PriorVector(xi)


@dataclass(frozen=True, eq=False)
class WeightedGram:
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def weighted_gram(s: SignalSet, xi) -> WeightedGram:
    """g_ij = sqrt(xi_i) <psi_i|psi_j> sqrt(xi_j); shares its spectrum with S_xi."""
    xi = as_prior(xi)
    if len(xi) != s.size:
        raise DimensionMismatch(f"prior has length {len(xi)}, signal set has {s.size} states")
    r = np.sqrt(xi.xi)
    g = r[:, None] * s.matrix * r[None, :]
    g.setflags(write=False)
    return WeightedGram(g)


def weighted_grams(s: SignalSet, priors: np.ndarray) -> np.ndarray:
    """Stack of weighted Gram matrices for an (N, M) array of priors."""
    r = np.sqrt(np.clip(priors, 0.0, None))
    return r[:, :, None] * s.matrix[None, :, :] * r[:, None, :]
