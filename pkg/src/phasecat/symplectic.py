"""Phase-space linear algebra.

Phase-space vectors are ordered ``(q_1..q_n, p_1..p_n)`` and the symplectic
form is ``J = [[0, I], [-I, 0]]``.
"""

from typing import NamedTuple

import numpy as np

from .errors import NotSymplecticError, SingularCayley

TOL_SYMP = 1e-10


def sympmat(n):
    """Return the ``2n x 2n`` symplectic form ``J``."""
    idm = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, idm], [-idm, zero]])


def _half_dim(m):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] % 2:
        raise ValueError(f"phase-space matrices must be even-dimensional, got {m.shape[0]}")
    return m.shape[0] // 2


def wedge(a, b):
    """Symplectic product ``a ^ b = a_p . b_q - a_q . b_p = (J a) . b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[-1] or a.shape[-1] % 2:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    n = a.shape[-1] // 2
    return np.sum(a[..., n:] * b[..., :n], axis=-1) - np.sum(a[..., :n] * b[..., n:], axis=-1)


def is_symplectic(m, tol=TOL_SYMP):
    """True iff ``max|M J M^T - J| <= tol * max(1, max|M|^2)``."""
    m = np.asarray(m)
    n = _half_dim(m)
    J = sympmat(n)
    scale = max(1.0, float(np.max(np.abs(m))) ** 2)
    return bool(np.max(np.abs(m @ J @ m.T - J)) <= tol * scale)


def check_symplectic(m, tol=TOL_SYMP, name="matrix"):
    if not np.all(np.isfinite(m)):
        raise NotSymplecticError(f"{name} has non-finite entries")
    if np.iscomplexobj(m) and np.any(np.imag(m)):
        raise NotSymplecticError(f"{name} must be real")
    if not is_symplectic(np.real(m), tol):
        raise NotSymplecticError(f"{name} is not symplectic within tol={tol:g}")


def rotation(theta):
    """One-mode phase-space rotation generated by ``(q^2 + p^2)/2`` for time ``theta``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def squeeze(s):
    """``diag(s, 1/s)``: stretch ``q`` by ``s``."""
    return np.diag([s, 1.0 / s])


def orthosymplectic_from_unitary(u):
    """Embed an ``n x n`` unitary as a ``2n x 2n`` orthogonal symplectic matrix."""
    x, y = np.real(u), np.imag(u)
    return np.block([[x, -y], [y, x]])


def random_symplectic(n, rng, max_log_squeeze=1.0):
    """Random ``O1 diag(s, 1/s) O2`` with ``log s`` uniform in ``[0, max_log_squeeze]``."""
    from scipy.stats import unitary_group

    if n == 1:
        o1 = rotation(rng.uniform(0, 2 * np.pi))
        o2 = rotation(rng.uniform(0, 2 * np.pi))
    else:
        o1 = orthosymplectic_from_unitary(unitary_group.rvs(n, random_state=rng))
        o2 = orthosymplectic_from_unitary(unitary_group.rvs(n, random_state=rng))
    s = np.exp(rng.uniform(0, max_log_squeeze, size=n))
    return o1 @ np.diag(np.concatenate([s, 1 / s])) @ o2


def cayley(S, tol=1e-12):
    r"""Cayley transform ``C_S = J (S - I)(S + I)^{-1}``.

    The result is the symmetric matrix entering the quadratic phase
    :math:`\exp(i x \cdot C_S x / \hbar)` of the reflection symbol of the
    metaplectic operator of ``S``.

    Raises:
        SingularCayley: if ``|det(S + I)| <= tol``. The limiting form is not
            implemented; rotate ``S`` slightly off the -1 eigenvalue.
    """
    S = np.asarray(S, dtype=float)
    n = _half_dim(S)
    idm = np.eye(2 * n)
    if abs(np.linalg.det(S + idm)) <= tol:
        raise SingularCayley("det(S + I) vanishes; S has an eigenvalue -1")
    C = sympmat(n) @ np.linalg.solve((S + idm).T, (S - idm).T).T
    return 0.5 * (C + C.T)


def _symplectic_frame(P, tol):
    """Eigenvectors of a symmetric positive symplectic ``P`` for eigenvalues >= 1.

    Returns ``(lam, V)`` with ``lam`` descending and the columns of ``V``
    orthonormal and isotropic (``V^T J V = 0``), so ``[V, -J V]`` is
    orthogonal symplectic.
    """
    n = P.shape[0] // 2
    J = sympmat(n)
    w, vecs = np.linalg.eigh(P)
    order = np.argsort(-w, kind="stable")
    w, vecs = w[order], vecs[:, order]
    big = [i for i in range(2 * n) if w[i] > 1.0 + tol][:n]
    chosen = [vecs[:, i] for i in big]
    lam = [w[i] for i in big]
    # unit eigenvalue cluster: symplectic Gram-Schmidt inside the cluster
    cluster = vecs[:, [i for i in range(2 * n) if abs(w[i] - 1.0) <= tol]]
    basis = list(chosen) + [-J @ v for v in chosen]
    for k in range(cluster.shape[1]):
        if len(chosen) == n:
            break
        v = cluster[:, k].copy()
        for _ in range(2):
            for b in basis:
                v -= (b @ v) * b
        norm = np.linalg.norm(v)
        if norm < 1e-6:
            continue
        v /= norm
        chosen.append(v)
        lam.append(1.0)
        basis.extend([v, -J @ v])
    if len(chosen) != n:
        raise np.linalg.LinAlgError("could not build a symplectic eigenframe")
    return np.array(lam), np.column_stack(chosen)


class SSTDecomposition(NamedTuple):
    O: np.ndarray
    Lambda: np.ndarray


class EulerDecomposition(NamedTuple):
    O: np.ndarray
    Lambda: np.ndarray
    O_prime: np.ndarray


def diagonalize_sst(S, tol=TOL_SYMP):
    """Diagonalize ``S S^T = O diag(lam, 1/lam) O^T`` with ``O`` orthogonal symplectic.

    Args:
        S (array): real symplectic matrix
        tol (float): symplecticity tolerance

    Returns:
        SSTDecomposition: ``(O, Lambda)`` with ``lam_i >= 1`` sorted descending
    """
    S = np.asarray(S, dtype=float)
    check_symplectic(S, tol, "S")
    n = S.shape[0] // 2
    P = S @ S.T
    P = 0.5 * (P + P.T)
    cluster_tol = 1e-9 * max(1.0, float(np.max(np.abs(P))))
    lam, V = _symplectic_frame(P, cluster_tol)
    O = np.hstack([V, -sympmat(n) @ V])
    return SSTDecomposition(O, np.diag(np.concatenate([lam, 1.0 / lam])))


def euler_decompose(S, tol=TOL_SYMP):
    """Euler (Bloch-Messiah) decomposition ``S = O Lambda O'``.

    ``O`` and ``O'`` are orthogonal symplectic, ``Lambda = diag(s, 1/s)`` with
    ``s_i >= 1`` descending. The decomposition is not unique when singular
    values repeat; only the reconstruction and the structure are guaranteed.
    """
    O, lam = diagonalize_sst(S, tol)
    s = np.sqrt(np.diag(lam))
    O_prime = (1.0 / s)[:, None] * (O.T @ np.asarray(S, dtype=float))
    return EulerDecomposition(O, np.diag(s), O_prime)


def williamson(V, tol=1e-11):
    """Williamson normal form ``V = S diag(d, d) S^T`` of a positive definite ``V``.

    Returns:
        tuple[array, array]: symplectic ``S`` and the symplectic eigenvalues
        ``d`` (length ``n``, ascending)
    """
    from scipy.linalg import schur, sqrtm

    V = np.asarray(V, dtype=float)
    n = _half_dim(V)
    if np.max(np.abs(V - V.T)) > tol * max(1.0, np.max(np.abs(V))):
        raise ValueError("V must be symmetric")
    V = 0.5 * (V + V.T)
    w = np.linalg.eigvalsh(V)
    if w[0] <= 0:
        raise ValueError("V must be positive definite")
    Vm12 = np.real(sqrtm(np.linalg.inv(V)))
    Vm12 = 0.5 * (Vm12 + Vm12.T)
    T, K = schur(Vm12 @ sympmat(n) @ Vm12, output="real")
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    blocks = [np.eye(2) if T[2 * i, 2 * i + 1] > 0 else swap for i in range(n)]
    P = np.zeros((2 * n, 2 * n))
    for i, b in enumerate(blocks):
        P[2 * i:2 * i + 2, 2 * i:2 * i + 2] = b
    K = K @ P
    T = P @ T @ P
    x = np.array([T[2 * i, 2 * i + 1] for i in range(n)])
    d = 1.0 / x
    order = np.argsort(d, kind="stable")
    perm = np.concatenate([2 * order, 2 * order + 1])
    perm = np.concatenate([perm[:n], perm[n:]])
    K = K[:, perm]
    d = d[order]
    dd = np.concatenate([d, d])
    S = Vm12 @ K * np.sqrt(dd)[None, :]
    S = np.linalg.inv(S).T
    return S, d


class Signature(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int


def signature(M, zero_tol=None, sym_tol=1e-8):
    """Inertia of a real symmetric matrix.

    ``zero_tol`` defaults to ``1e-8 * max|eigenvalue|``; eigenvalues with
    ``|e| <= zero_tol`` count as zero.
    """
    M = np.asarray(M)
    if np.iscomplexobj(M):
        if np.any(np.abs(M.imag) > 0):
            raise ValueError("signature needs a real matrix")
        M = M.real
    scale = max(float(np.max(np.abs(M))), 0.0) if M.size else 0.0
    if np.max(np.abs(M - M.T), initial=0.0) > sym_tol * max(scale, 1e-300):
        raise ValueError("signature needs a symmetric matrix")
    w = np.linalg.eigvalsh(0.5 * (M + M.T))
    if zero_tol is None:
        zero_tol = 1e-8 * float(np.max(np.abs(w), initial=0.0))
    return Signature(int(np.sum(w > zero_tol)), int(np.sum(w < -zero_tol)),
                     int(np.sum(np.abs(w) <= zero_tol)))
