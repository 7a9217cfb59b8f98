import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasecat.errors import NotSymplecticError, SingularCayley
from phasecat.symplectic import (cayley, check_symplectic, diagonalize_sst, euler_decompose, is_symplectic,
                                 random_symplectic, rotation, signature, squeeze, sympmat, wedge, williamson)


def test_sympmat_structure():
    J = sympmat(2)
    assert np.array_equal(J @ J, -np.eye(4))
    assert np.array_equal(J.T, -J)


def test_wedge_antisymmetric_and_matches_J():
    a, b = np.array([1.0, 2.0]), np.array([-0.5, 3.0])
    assert wedge(a, b) == pytest.approx(-wedge(b, a))
    assert wedge(a, b) == pytest.approx((sympmat(1) @ a) @ b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_symplectic_is_symplectic(n, rng):
    for _ in range(10):
        assert is_symplectic(random_symplectic(n, rng, 1.5))


def test_check_symplectic_rejects():
    with pytest.raises(NotSymplecticError):
        check_symplectic(np.diag([2.0, 2.0]))


def test_rotation_and_squeeze():
    assert is_symplectic(rotation(0.3))
    assert is_symplectic(squeeze(3.0))
    assert np.allclose(rotation(0.2) @ rotation(0.5), rotation(0.7))


def test_cayley_symmetric_and_singular():
    C = cayley(squeeze(2.0) @ rotation(0.4))
    assert np.allclose(C, C.T)
    with pytest.raises(SingularCayley):
        cayley(rotation(np.pi))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_decomposition(n, rng):
    for _ in range(20):
        S = random_symplectic(n, rng, 1.0)
        O, L, Op = euler_decompose(S)
        assert np.allclose(O @ L @ Op, S, atol=1e-10)
        assert np.allclose(O @ O.T, np.eye(2 * n), atol=1e-10)
        assert np.allclose(Op @ Op.T, np.eye(2 * n), atol=1e-10)
        assert np.allclose(L, np.diag(np.diag(L)))
        assert is_symplectic(O) and is_symplectic(Op)


def test_diagonalize_sst(rng):
    S = random_symplectic(2, rng)
    O, Lam = diagonalize_sst(S)
    assert np.allclose(O @ Lam @ O.T, S @ S.T, atol=1e-10)
    assert is_symplectic(O)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_williamson(n, rng):
    S0 = random_symplectic(n, rng)
    d0 = np.sort(rng.uniform(1, 3, n))
    V = S0 @ np.diag(np.concatenate([d0, d0])) @ S0.T
    S, d = williamson(V)
    assert is_symplectic(S)
    assert np.allclose(d, d0, atol=1e-10)
    assert np.allclose(S @ np.diag(np.concatenate([d, d])) @ S.T, V, atol=1e-9)


def test_williamson_rejects_indefinite():
    with pytest.raises(ValueError):
        williamson(np.diag([1.0, -1.0]))


def test_signature():
    s = signature(np.diag([2.0, -1.0, 0.0]))
    assert tuple(s) == (1, 1, 1)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.2, 5.0), st.floats(-3, 3))
def test_composition_stays_symplectic(t1, s, t2):
    assert is_symplectic(rotation(t1) @ squeeze(s) @ rotation(t2))
