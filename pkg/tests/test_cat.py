import numpy as np
import pytest

from phasecat.cat import (FringeClass, PureCat, cat_wigner, classify_fringes, envelope, interference_matrices,
                          interference_term, normal_form, oscillation_phase)
from phasecat.errors import VanishingNorm
from phasecat.states import GaussianPure, gaussian_integral, purity, sample_grid
from phasecat.symplectic import random_symplectic, rotation, squeeze, sympmat


def coherent_pair(d=2.0, hbar=1.0):
    return PureCat(1, 1, GaussianPure(np.eye(2), [d, 0], hbar), GaussianPure(np.eye(2), [-d, 0], hbar))


def test_cat_is_normalized_and_pure():
    st = cat_wigner(coherent_pair())
    assert st.integral() == pytest.approx(1.0)
    assert purity(st) == pytest.approx(1.0)


def test_even_cat_origin_value():
    # even cat at the origin: hills contribute e^{-2|alpha|^2} each, the fringe term 1
    d = 2.0
    st = cat_wigner(coherent_pair(d))
    alpha2 = d * d / 2
    expected = (2 * np.exp(-2 * alpha2) + 2) / (np.pi * 2 * (1 + np.exp(-2 * alpha2)))
    assert st(np.zeros(2)) == pytest.approx(expected)


def test_odd_cat_negative_at_origin():
    cat = PureCat(1, -1, GaussianPure(np.eye(2), [2, 0]), GaussianPure(np.eye(2), [-2, 0]))
    assert cat_wigner(cat)(np.zeros(2)) < 0


def test_zero_amplitudes_rejected():
    with pytest.raises(VanishingNorm):
        PureCat(0, 0, GaussianPure(np.eye(2), [0, 0]), GaussianPure(np.eye(2), [1, 0]))


@pytest.mark.parametrize("n", [1, 2])
def test_G_is_complex_symplectic(n, rng):
    U, V = random_symplectic(n, rng), random_symplectic(n, rng)
    K, G = interference_matrices(U, V)
    J = sympmat(n)
    assert np.allclose(G @ J @ G.T, J, atol=1e-10)
    assert np.linalg.det(G) == pytest.approx(1.0)
    assert np.all(np.linalg.eigvalsh(G.real) > 0)


@pytest.mark.parametrize("s", [1.5, 2.0, 4.0])
def test_coherent_vs_squeezed_theta(s):
    nf = normal_form(np.eye(2), squeeze(s))
    assert nf.thetas[0] == pytest.approx((s * s - 1) / (s * s + 1))
    assert classify_fringes(nf) is FringeClass.HYPERBOLIC


def test_identical_covariances_are_linear(rng):
    U = random_symplectic(2, rng)
    nf = normal_form(U, U)
    assert classify_fringes(nf) is FringeClass.LINEAR
    assert np.allclose(nf.thetas, 0)


def test_rotated_copies_are_linear():
    # same covariance up to a common symplectic: coherent states are rotation invariant
    assert classify_fringes(normal_form(rotation(0.3), rotation(1.1))) is FringeClass.LINEAR


def test_envelope_times_cosine_is_interference(rng):
    cat = PureCat(1.0, 0.5 + 0.5j, GaussianPure(random_symplectic(1, rng), [1.5, 0.0]),
                  GaussianPure(random_symplectic(1, rng), [-1.0, 1.0]))
    term = interference_term(cat)
    x = rng.normal(size=(50, 2))
    lhs = term(x)
    rhs = envelope(term, x) * np.cos(oscillation_phase(term, x))
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_cat_interference_integral_matches_overlap():
    cat = coherent_pair(0.5)
    st = cat_wigner(cat)
    assert sum(gaussian_integral(t) for t in st.terms) == pytest.approx(1.0)
    grid = sample_grid(st, [(-7, 7, 141), (-7, 7, 141)])
    assert grid.riemann_sum() == pytest.approx(1.0, abs=1e-8)
