import numpy as np
import pytest

from phasecat.cat import PureCat
from phasecat.errors import GridError, TruncationInsufficient
from phasecat.oracle import (FockDensity, FockOperators, check_boundary, fock_cat, fock_gaussian, fock_kerr,
                             fock_thermal, fock_wigner, fock_wigner_direct, fock_wigner_grid, quadrature_wigner, sample_wave,
                             split_operator_kho)
from phasecat.states import GaussianPure, GaussianSumState, wigner_pure


def test_fock_vacuum_wigner():
    dens = fock_gaussian(GaussianPure(np.eye(2), [0, 0]))
    assert fock_wigner(dens, np.array([0.0]), np.array([0.0]))[0] == pytest.approx(1 / np.pi)


def test_recursion_matches_direct_parity_formula(rng):
    cat = PureCat(1, 1j, GaussianPure(np.eye(2), [1.0, 0.5]), GaussianPure(np.diag([1.5, 1 / 1.5]), [-1, 0]))
    dens = fock_cat(cat)
    x = rng.uniform(-2, 2, size=(5, 2))
    rec = fock_wigner(dens, x[:, 0], x[:, 1])
    direct = np.array([fock_wigner_direct(dens, xi).real for xi in x])
    assert np.allclose(rec, direct, atol=1e-10)


def test_fock_gaussian_matches_closed_form(rng):
    g = GaussianPure(np.diag([1.8, 1 / 1.8]), [1.0, -0.5])
    dens = fock_gaussian(g)
    qs = np.linspace(-3, 3, 7)
    W = fock_wigner_grid(dens, qs, qs)
    closed = GaussianSumState.single(wigner_pure(g))
    mesh = np.stack(np.meshgrid(qs, qs, indexing="ij"), axis=-1)
    assert np.allclose(W, closed(mesh), atol=1e-12)


def test_thermal_trace_and_occupation():
    dens = fock_thermal(1.5)
    assert dens.trace() == pytest.approx(1.0)
    n = np.real(np.trace(dens.rho @ FockOperators(dens.N).number))
    assert n == pytest.approx(1.5, rel=1e-8)


def test_truncation_is_detected():
    psi = np.ones(10) / np.sqrt(10)
    with pytest.raises(TruncationInsufficient):
        FockDensity.pure(psi).check()


def test_kerr_preserves_trace():
    dens = fock_kerr(fock_thermal(0.5, (2.0, 0.0)), 1, 8)
    assert dens.trace() == pytest.approx(1.0)


def test_quadrature_wigner_matches_closed_form():
    hbar = 0.1
    g = GaussianPure(np.diag([1.3, 1 / 1.3]), [0.5, 0.3], hbar)
    gw = sample_wave(g.wave(), 6.0, 2048, hbar)
    p = np.linspace(-1, 1, 11)
    sec = quadrature_wigner(gw, 0.5, p)
    closed = GaussianSumState.single(wigner_pure(g))
    assert np.allclose(sec, closed(np.stack([np.full_like(p, 0.5), p], axis=-1)), atol=1e-9)


def test_boundary_check():
    g = GaussianPure(np.eye(2), [0, 0], 1.0)
    with pytest.raises(GridError):
        check_boundary(sample_wave(g.wave(), 2.0, 256, 1.0))


def test_free_rotation_by_quarter_period():
    hbar = 0.05
    g = GaussianPure(np.eye(2), [1.0, 0.0], hbar)
    gw = sample_wave(g.wave(), 5.0, 2048, hbar)
    out = split_operator_kho(gw, 0.0, np.pi / 2, 1)
    # coherent state rotates rigidly onto the p axis: (q, p) -> (0, -1)
    target = sample_wave(GaussianPure(np.eye(2), [0.0, -1.0], hbar).wave(), 5.0, 2048, hbar)
    assert abs(out.inner(target)) == pytest.approx(1.0, abs=1e-10)


def test_fock_overlap_matches_wigner_product(rng):
    from phasecat.states import overlap_integral
    from phasecat.symplectic import random_symplectic

    g1 = GaussianPure(random_symplectic(1, rng, 0.8), [0.5, -0.3])
    g2 = GaussianPure(random_symplectic(1, rng, 0.8), [-0.4, 0.6])
    d1, d2 = fock_gaussian(g1), fock_gaussian(g2)
    lhs = np.real(np.trace(d1.rho @ d2.rho))
    rhs = 2 * np.pi * overlap_integral(GaussianSumState.single(wigner_pure(g1)),
                                       GaussianSumState.single(wigner_pure(g2))).real
    assert lhs == pytest.approx(rhs, abs=1e-8)


def test_quadrature_wigner_normalization():
    from phasecat.oracle import quadrature_wigner_grid

    g = GaussianPure(np.diag([1.5, 1 / 1.5]), [0.3, 0.2], 1.0)
    gw = sample_wave(g.wave(), 8.0, 4096, 1.0)
    qs = np.linspace(-7, 7, 141)
    ps = np.linspace(-7, 7, 141)
    W = quadrature_wigner_grid(gw, qs, ps)
    assert np.sum(W) * (qs[1] - qs[0]) * (ps[1] - ps[0]) == pytest.approx(1.0, abs=1e-6)
