import math

import numpy as np
import pytest

from phasecat.errors import VanishingNorm
from phasecat.kerr import (GaussianMixed, LinearOp, ThermalState, binary_kerr_state, binary_kerr_wigner,
                           chi_thermal, conditional_cat, fringe_fwhm, fringe_width, fringe_widths, kerr_cat,
                           kerr_coefficients, thermal_wigner)
from phasecat.oracle import FockOperators, fock_kerr, fock_thermal, fock_wigner_grid
from phasecat.states import GaussianPure, GaussianSumState, purity, sample_grid
from phasecat.symplectic import squeeze

COPRIME = [(mu, nu) for nu in range(1, 13) for mu in range(1, max(nu, 2)) if math.gcd(mu, nu) == 1]


@pytest.mark.parametrize("mu,nu", COPRIME)
def test_kerr_coefficients_reconstruct(mu, nu):
    kc = kerr_coefficients(mu, nu)
    assert kc.reconstruction_error() < 1e-12
    mods = np.abs(kc.coeffs[kc.nonzero])
    assert np.ptp(mods) < 1e-12


def test_binary_weights():
    kc = kerr_coefficients(1, 4)
    assert kc.component_count == 2
    c = kc.coeffs[kc.nonzero]
    assert np.allclose(np.abs(c), 1 / np.sqrt(2))


def test_thermal_state_purity():
    for nbar in (0.0, 0.5, 2.0):
        ts = ThermalState(nbar, [0.5, 0.0], 1.0)
        st = GaussianSumState.single(ts.to_mixed().wigner())
        assert purity(st) == pytest.approx(1 / (2 * nbar + 1))


def test_thermal_wigner_peak():
    ts = ThermalState(1.0, [0.0, 0.0], 1.0)
    assert thermal_wigner(ts)(np.zeros(2)) == pytest.approx(1 / (np.pi * 3))
    assert chi_thermal(ts, np.zeros(2)) == pytest.approx(1 / (2 * np.pi))


def test_gaussian_mixed_mixture_reproduces_covariance():
    gm = GaussianMixed(np.array([[0.5, 0.1], [0.1, 0.3]]), np.array([0.2, -0.1]), 1.0)
    S0, L = gm.mixture
    # pure part plus latent spread rebuild the covariance
    C = 0.5 * S0 @ S0.T + L @ L.T
    assert np.allclose(C, 0.5 * np.linalg.inv(gm.M))


@pytest.mark.parametrize("mu,nu", [(1, 4), (1, 8), (3, 8), (1, 3)])
def test_kerr_cat_matches_fock(mu, nu):
    ts = ThermalState(0.5, [1.5, 0.5], 1.0)
    xs = np.linspace(-4, 4, 17)
    closed = sample_grid(kerr_cat(ts, mu, nu), [(-4, 4, 17), (-4, 4, 17)]).values
    oracle = fock_wigner_grid(fock_kerr(fock_thermal(0.5, ts.center, 1.0), mu, nu), xs, xs)
    assert np.max(np.abs(closed - oracle)) < 1e-9


def test_compass_has_four_hills():
    st = kerr_cat(ThermalState(0.5, [2.0, 0.0], 1.0), 1, 8)
    hills = [t for t in st.terms if not np.any(t.center.imag) and not np.any(t.M.imag)]
    assert len(hills) == 4
    assert len(st.terms) == 16


def test_binary_closed_form_matches(rng):
    ts = ThermalState(1.0, [2.0, 1.0], 0.7)
    x = rng.uniform(-4, 4, size=(100, 2))
    assert np.allclose(kerr_cat(ts, 1, 4)(x), binary_kerr_wigner(ts, x), atol=1e-13)
    assert np.allclose(binary_kerr_state(ts)(x), binary_kerr_wigner(ts, x), atol=1e-13)


def test_fringe_fwhm_decreases_with_temperature():
    widths = [fringe_width(binary_kerr_state(ThermalState(nb, [2.0, 0.0], 1.0))) for nb in (0, 0.5, 1, 2)]
    assert np.allclose(widths, [fringe_fwhm(nb) for nb in (0, 0.5, 1, 2)])
    assert all(b < a for a, b in zip(widths, widths[1:]))


def test_compass_envelope_classes():
    ws = fringe_widths(kerr_cat(ThermalState(1.0, [2.0, 0.0], 1.0), 1, 8))
    assert len(ws) == 2
    assert ws[0] == pytest.approx(fringe_fwhm(1.0))


def test_conditional_cat_parity_matches_fock():
    ts = ThermalState(0.3, [1.0, 0.0], 1.0)
    st = conditional_cat(ts, LinearOp.parity(1), -1)
    ops = FockOperators(120)
    dens = fock_thermal(0.3, ts.center, 1.0, N=120)
    P = ops.parity()
    rho = dens.rho - P @ dens.rho - dens.rho @ P + P @ dens.rho @ P
    rho /= np.trace(rho).real
    xs = np.linspace(-3, 3, 9)
    from phasecat.oracle import FockDensity
    oracle = fock_wigner_grid(FockDensity(rho, 1.0), xs, xs)
    closed = sample_grid(st, [(-3, 3, 9), (-3, 3, 9)]).values
    assert np.max(np.abs(closed - oracle)) < 1e-9


def test_conditional_cat_vanishing():
    # odd projection of the vacuum vanishes
    with pytest.raises(VanishingNorm):
        conditional_cat(GaussianPure(np.eye(2), [0, 0]), LinearOp.parity(1), -1)


def test_conditional_cat_squeezed_state_integral():
    g = GaussianPure(squeeze(1.5), [0.5, 0.5])
    st = conditional_cat(g, LinearOp.displacement([1.0, 0.0]), 1)
    assert st.integral() == pytest.approx(1.0)
