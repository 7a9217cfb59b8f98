import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasecat.errors import ImaginaryResidueExceeded
from phasecat.states import (ComplexGaussianTerm, GaussianPure, GaussianSumState, apply_metaplectic,
                             apply_translation, chi_pure, cross_wigner, eval_state, gaussian_integral,
                             overlap, purity, sample_grid, vacuum, wigner_pure)
from phasecat.symplectic import random_symplectic, rotation, squeeze


def test_vacuum_wigner_peak():
    g = vacuum()
    W = wigner_pure(g)
    assert W(np.zeros(2)) == pytest.approx(1 / np.pi)
    assert gaussian_integral(W) == pytest.approx(1.0)


@pytest.mark.parametrize("hbar", [1.0, 0.5, 2.0])
def test_pure_state_norm_and_purity(hbar, rng):
    g = GaussianPure(random_symplectic(1, rng), [0.3, -1.0], hbar)
    assert g.wave().norm2() == pytest.approx(1.0)
    st_ = GaussianSumState.single(wigner_pure(g))
    assert purity(st_) == pytest.approx(1.0)


def test_overlap_coherent_states():
    hbar = 1.0
    d = np.array([1.0, 0.5])
    g1 = GaussianPure(np.eye(2), [0, 0], hbar)
    g2 = GaussianPure(np.eye(2), d, hbar)
    assert abs(overlap(g1.wave(), g2.wave())) ** 2 == pytest.approx(np.exp(-d @ d / (2 * hbar)))


def test_cross_wigner_diagonal_matches_wigner(rng):
    g = GaussianPure(random_symplectic(1, rng), [0.5, 0.2])
    C = cross_wigner(g.wave(), g.wave())
    W = wigner_pure(g)
    x = rng.normal(size=(20, 2))
    assert np.allclose(C(x), W(x), atol=1e-13)


def test_chi_pure_at_origin(rng):
    g = GaussianPure(random_symplectic(1, rng), [1.0, 2.0])
    # normalized so that chi(0) = (2 pi hbar)^{-n}
    assert chi_pure(g, np.zeros(2)) == pytest.approx(1 / (2 * np.pi))


def test_eval_state_rejects_imaginary():
    t = ComplexGaussianTerm(1j, np.eye(2), np.zeros(2))
    with pytest.raises(ImaginaryResidueExceeded):
        eval_state(GaussianSumState.single(t), np.zeros(2))


def test_translation_and_metaplectic_commute_with_eval(rng):
    g = GaussianPure(np.eye(2), [0.0, 0.0])
    st_ = GaussianSumState.single(wigner_pure(g))
    S = squeeze(2.0) @ rotation(0.3)
    moved = apply_translation(apply_metaplectic(st_, S), np.array([1.0, -1.0]))
    direct = GaussianSumState.single(wigner_pure(GaussianPure(S, [1.0, -1.0])))
    x = rng.normal(size=(10, 2))
    assert np.allclose(moved(x), direct(x))


def test_sample_grid_riemann_sum():
    st_ = GaussianSumState.single(wigner_pure(vacuum()))
    grid = sample_grid(st_, [(-6, 6, 121), (-6, 6, 121)])
    assert grid.values.shape == (121, 121)
    assert grid.riemann_sum() == pytest.approx(1.0, abs=1e-8)


def test_sample_grid_axis_validation():
    st_ = GaussianSumState.single(wigner_pure(vacuum()))
    with pytest.raises(ValueError):
        sample_grid(st_, [(-1, 1, 5)])


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.3, 3.0), st.floats(0, 6.3))
def test_pure_integral_is_one(q, p, s, th):
    g = GaussianPure(rotation(th) @ squeeze(s), [q, p])
    assert gaussian_integral(wigner_pure(g)) == pytest.approx(1.0, abs=1e-12)
