import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cq_exponent.constellation import Kind, make_signal_set, weighted_gram
from cq_exponent.errors import DomainError, NoConvergence
from cq_exponent.spectra import (
    Spectrum,
    binary_eigenvalues_closed_form,
    hermitian_eigenvalues,
    jacobi_eigenvalues,
    von_neumann_entropy,
)


def charpoly_roots_3x3(g):
    """Roots of det(G - x I) from its cubic coefficients, at 40 digits."""
    with mpmath.workdps(40):
        a = mpmath.matrix([[mpmath.mpc(complex(v)) for v in row] for row in g])
        tr = a[0, 0] + a[1, 1] + a[2, 2]
        minors = sum(a[i, i] * a[j, j] - a[i, j] * a[j, i] for i, j in [(0, 1), (0, 2), (1, 2)])
        det = mpmath.det(a)
        roots = mpmath.polyroots([1, -tr, minors, -det], maxsteps=200, extraprec=80)
        return sorted((float(mpmath.re(r)) for r in roots), reverse=True)


def test_orthogonal_uniform():
    g = weighted_gram(make_signal_set(Kind.ORTH4, 200.0), [0.25] * 4)
    assert np.allclose(hermitian_eigenvalues(g).lambdas, 0.25, atol=1e-15)


def test_binary_uniform_general_solver():
    ns = 0.7
    kappa = math.exp(-2 * ns)
    sp = hermitian_eigenvalues(weighted_gram(make_signal_set(Kind.BINARY, ns), [0.5, 0.5]))
    assert np.allclose(sp.lambdas, [(1 + kappa) / 2, (1 - kappa) / 2], atol=1e-15)


@pytest.mark.parametrize("xi", [(1 / 3, 1 / 3, 1 / 3), (0.2, 0.5, 0.3), (0.6, 0.1, 0.3)])
def test_ternary_matches_cubic_oracle(xi):
    g = weighted_gram(make_signal_set(Kind.TERNARY, 1.0), np.array(xi) / sum(xi))
    ref = charpoly_roots_3x3(g.entries)
    assert np.allclose(hermitian_eigenvalues(g).lambdas, ref, atol=1e-10)


def test_psk3_complex_matches_cubic_oracle():
    g = weighted_gram(make_signal_set(Kind.PSK3, 0.8), [0.5, 0.3, 0.2])
    assert np.iscomplexobj(g.entries) and np.abs(g.entries.imag).max() > 0.01
    ref = charpoly_roots_3x3(g.entries)
    assert np.allclose(hermitian_eigenvalues(g).lambdas, ref, atol=1e-10)


def test_jacobi_random_hermitian_against_lapack():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(200, 6, 6)) + 1j * rng.normal(size=(200, 6, 6))
    h = x + x.conj().transpose(0, 2, 1)
    ours = np.sort(jacobi_eigenvalues(h), axis=1)
    assert np.abs(ours - np.linalg.eigvalsh(h)).max() < 1e-12


def test_jacobi_budget_exhausted():
    h = np.array([[1.0, 0.5], [0.5, 2.0]])
    with pytest.raises(NoConvergence):
        jacobi_eigenvalues(h, max_sweeps=0)


def test_closed_form_corners():
    assert np.allclose(binary_eigenvalues_closed_form(0.5, 0.0).lambdas, [0.5, 0.5])
    assert np.allclose(binary_eigenvalues_closed_form(0.5, 1.0).lambdas, [1.0, 0.0])
    with pytest.raises(DomainError):
        binary_eigenvalues_closed_form(1.2, 0.3)


def _binary_gram(xi1, kappa):
    r = math.sqrt(xi1 * (1 - xi1))
    return np.array([[xi1, kappa * r], [kappa * r, 1 - xi1]])


def test_closed_form_vs_general_at_example():
    a = binary_eigenvalues_closed_form(0.3, 0.2).lambdas
    b = hermitian_eigenvalues(_binary_gram(0.3, 0.2)).lambdas
    assert np.abs(a - b).max() < 1e-12


def test_closed_form_vs_general_grid():
    pts = np.linspace(0, 1, 11)
    for xi1, kappa in itertools.product(pts, pts):
        a = binary_eigenvalues_closed_form(xi1, kappa).lambdas
        b = hermitian_eigenvalues(_binary_gram(xi1, kappa)).lambdas
        assert np.abs(a - b).max() < 1e-12, (xi1, kappa)


@given(st.floats(0, 1), st.floats(0, 1))
def test_closed_form_vs_general_random(xi1, kappa):
    a = binary_eigenvalues_closed_form(xi1, kappa).lambdas
    b = hermitian_eigenvalues(_binary_gram(xi1, kappa)).lambdas
    assert np.abs(a - b).max() < 1e-12
    assert abs(b.sum() - 1) < 1e-10


def test_entropy_values():
    assert von_neumann_entropy(Spectrum([1.0, 0.0])) == 0.0
    assert von_neumann_entropy(Spectrum([0.25] * 4)) == pytest.approx(math.log(4), abs=1e-15)
    kappa = math.exp(-2)
    with mpmath.workdps(30):
        k = mpmath.exp(-2)
        ref = -sum(x * mpmath.log(x) for x in [(1 + k) / 2, (1 - k) / 2])
    sp = Spectrum([(1 + kappa) / 2, (1 - kappa) / 2])
    assert von_neumann_entropy(sp) == pytest.approx(float(ref), abs=1e-15)


@given(st.lists(st.floats(0, 1), min_size=2, max_size=6).filter(lambda w: sum(w) > 1e-6),
       st.randoms())
def test_entropy_permutation_invariant_and_bounded(w, rnd):
    lam = np.array(w) / sum(w)
    h = von_neumann_entropy(Spectrum(lam))
    perm = list(lam)
    rnd.shuffle(perm)
    assert von_neumann_entropy(Spectrum(perm)) == pytest.approx(h, abs=1e-14)
    assert -1e-15 <= h <= math.log(len(lam)) + 1e-12


def test_entropy_zero_only_for_pure():
    assert von_neumann_entropy(Spectrum([1.0, 0.0, 0.0])) == 0.0
    assert von_neumann_entropy(Spectrum([1 - 1e-9, 1e-9])) > 0


def test_binary_entropy_monotone_in_kappa():
    kappas = np.linspace(1, 0, 101)
    h = [von_neumann_entropy(binary_eigenvalues_closed_form(0.5, k)) for k in kappas]
    assert h[0] == 0.0
    assert h[-1] == pytest.approx(math.log(2), abs=1e-15)
    assert np.all(np.diff(h) > 0)


def test_spectrum_validation():
    with pytest.raises(DomainError):
        Spectrum([0.6, 0.6])
    assert list(Spectrum([0.2, 0.8]).lambdas) == [0.8, 0.2]
