import numpy as np
import pytest

from phasecat.cat import FringeClass
from phasecat.errors import DeconvolutionIllPosed
from phasecat.oracle import sample_wave, split_operator_kho
from phasecat.semiclassical import (KHOParams, classical_map, coherent_branch, decompose_squeezed,
                                    deconvolution_weight, kho_compare, pairwise_cat_demo, propagate_swarm,
                                    reconstruction_residual, squeezed_initial_state, swarm_grid, thawed_step)
from phasecat.symplectic import is_symplectic


def test_params_validation():
    with pytest.raises(ValueError):
        KHOParams(tau=0)
    with pytest.raises(ValueError):
        KHOParams(kicks=1.5)


def test_classical_map_jacobian_is_symplectic():
    x, J = classical_map(np.array([0.3, -0.2]), KHOParams())
    assert is_symplectic(J)
    eps = 1e-6
    num = np.column_stack([(classical_map(np.array([0.3, -0.2]) + eps * e, KHOParams())[0] - x) / eps
                           for e in np.eye(2)])
    assert np.allclose(num, J, atol=1e-5)


def test_coherent_branch_normalized():
    b = coherent_branch(0.5, 1.0, 0.02)
    assert b.norm2() == pytest.approx(1.0)


@pytest.mark.parametrize("theta", [0.3, np.pi / 3, 2.5])
def test_harmonic_branch_matches_grid(theta):
    hbar = 0.02
    params = KHOParams(K=0.0, tau=theta, hbar=hbar, kicks=1)
    b = thawed_step(coherent_branch(0.5, 0.2, hbar), params)
    g0 = sample_wave(coherent_branch(0.5, 0.2, hbar), 3.0, 2048, hbar)
    ex = split_operator_kho(g0, 0.0, theta, 1)
    approx = sample_wave(b, 3.0, 2048, hbar)
    assert abs(ex.inner(approx)) == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(ex.psi, approx.psi, atol=1e-7)


def test_branch_covariance_matches_jacobian():
    params = KHOParams(K=1.0, tau=0.7, hbar=0.01, kicks=1)
    b = coherent_branch(0.4, 0.0, params.hbar)
    for _ in range(3):
        b = thawed_step(b, params)
    assert np.allclose(b.covariance, b.jacobian @ b.jacobian.T, atol=1e-10)


def test_deconvolution_needs_wide_state():
    with pytest.raises(DeconvolutionIllPosed):
        deconvolution_weight(0.9, 0.01)


def test_decomposition_reconstructs_state():
    psi0 = squeezed_initial_state(0.3, 0.01)
    swarm = decompose_squeezed(psi0)
    assert reconstruction_residual(psi0, swarm) < 1e-8


def test_zero_kick_swarm_is_exact():
    params = KHOParams(K=0.0, tau=np.pi / 3, hbar=0.0128, kicks=2)
    res = kho_compare(params, squeezed_initial_state(hbar=params.hbar))
    assert res.fidelity == pytest.approx(1.0, abs=1e-8)
    assert np.max(np.abs(res.section_exact - res.section_swarm)) < 1e-8 * np.max(np.abs(res.section_exact)) + 1e-8


def test_weak_kicks_converge():
    params = KHOParams(K=0.2, tau=np.pi / 3, hbar=0.0128, kicks=2)
    res = kho_compare(params, squeezed_initial_state(hbar=params.hbar))
    assert res.fidelity > 0.9999
    assert res.discrepancy < 0.01


def test_pairwise_cat_demo_classifies():
    params = KHOParams()
    swarm = propagate_swarm(decompose_squeezed(squeezed_initial_state(hbar=params.hbar)), params)
    c = len(swarm) // 2
    st, cls = pairwise_cat_demo(swarm, c - 20, c + 20)
    assert st.integral() == pytest.approx(1.0)
    assert isinstance(cls, FringeClass)
    with pytest.raises(ValueError):
        pairwise_cat_demo(swarm, 3, 3)


def test_swarm_grid_shape():
    params = KHOParams(kicks=1)
    swarm = propagate_swarm(decompose_squeezed(squeezed_initial_state(hbar=params.hbar)), params)
    gw = swarm_grid(swarm, 10.0, 4096)
    assert gw.psi.shape == (4096,)
