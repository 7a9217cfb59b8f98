r"""Linear open-system dynamics of Gaussian sums.

A quadratic Hamiltonian ``H = x.B x/2`` with linear Lindblad operators
``L_k = lambda_k ^ x`` turns the master equation into a linear
Fokker-Planck equation for the Wigner function,

.. math:: \partial_t W = -\nabla\cdot(\mathsf A x W) + \tfrac12 \nabla\cdot \mathsf D \nabla W,

with drift ``A = J(B - Im Y)`` and diffusion ``D = hbar Re Y`` where
``Y = sum_k lambda_k lambda_k^dagger``. Every Gaussian term evolves on its
own: the center follows ``e^{At}`` and the covariance obeys
``C' = A C + C A^T + D``.

Covariances here are physical, ``C = (hbar/2) M^{-1}`` for a term
``G(x; M, w)``; the vacuum has ``C = hbar I/2``.
"""

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm, solve_continuous_lyapunov

from .states import _is_posdef
from .symplectic import Signature, signature, sympmat


@dataclass(frozen=True)
class LindbladChannel:
    """Quadratic Hamiltonian matrix ``B`` plus linear Lindblad vectors.

    Args:
        B (array): real symmetric ``2n x 2n`` Hamiltonian matrix
        lambdas (Sequence[array]): complex ``2n`` vectors; ``L_k = lambda_k ^ x``
        hbar (float): Planck constant
    """

    B: np.ndarray
    lambdas: tuple = ()
    hbar: float = 1.0

    def __post_init__(self):
        B = np.asarray(self.B, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
            raise ValueError(f"B must be 2n x 2n, got {B.shape}")
        if np.max(np.abs(B - B.T)) > 1e-12 * max(1.0, np.max(np.abs(B))):
            raise ValueError("B must be symmetric")
        lams = tuple(np.asarray(l, dtype=complex) for l in self.lambdas)
        for l in lams:
            if l.shape != (B.shape[0],):
                raise ValueError("Lindblad vector has the wrong dimension")
        if not np.any(B) and not any(np.any(l) for l in lams):
            raise ValueError("channel has neither a Hamiltonian nor a Lindblad term")
        object.__setattr__(self, "B", 0.5 * (B + B.T))
        object.__setattr__(self, "lambdas", lams)

    @property
    def n(self):
        return self.B.shape[0] // 2


def damped_oscillator(kappa, omega=1.0, hbar=1.0):
    """One-mode oscillator of frequency ``omega`` with amplitude damping rate ``kappa``.

    The drift is ``omega J - (kappa/2) I`` and the stationary state is the vacuum.
    """
    lam = np.sqrt(kappa / 2.0) * np.array([1.0, 1j])
    return LindbladChannel(omega * np.eye(2), (lam,) if kappa else (), hbar)


@dataclass(frozen=True)
class ChannelMatrices:
    A: np.ndarray
    D: np.ndarray
    Upsilon: np.ndarray

    @property
    def n(self):
        return self.A.shape[0] // 2


def channel_matrices(ch):
    """Drift, diffusion and ``Upsilon`` of a channel."""
    dim = 2 * ch.n
    ups = np.zeros((dim, dim), dtype=complex)
    for l in ch.lambdas:
        ups += np.outer(l, np.conj(l))
    D = ch.hbar * ups.real
    D = 0.5 * (D + D.T)
    A = sympmat(ch.n) @ (ch.B - ups.imag)
    if np.max(np.abs(ups.imag + ups.imag.T)) > 1e-12 * max(1.0, np.max(np.abs(ups))):
        raise ArithmeticError("Im Upsilon is not antisymmetric")
    if np.min(np.linalg.eigvalsh(D), initial=0.0) < -1e-12 * max(1.0, np.max(np.abs(D))):
        raise ArithmeticError("diffusion matrix is not positive semidefinite")
    return ChannelMatrices(A, D, ups)


def propagator(cm, t):
    """``(e^{At}, Q(t))`` with ``Q(t) = int_0^t e^{As} D e^{A^T s} ds``.

    Both come from one block exponential of ``[[A, D], [0, -A^T]]``.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    dim = cm.A.shape[0]
    if t == 0:
        return np.eye(dim), np.zeros((dim, dim))
    big = np.zeros((2 * dim, 2 * dim))
    big[:dim, :dim] = cm.A
    big[:dim, dim:] = cm.D
    big[dim:, dim:] = -cm.A.T
    E = expm(t * big)
    eAt = E[:dim, :dim]
    Q = E[:dim, dim:] @ eAt.T
    return eAt, 0.5 * (Q + Q.T)


def evolve_covariance(C0, cm, t):
    """``e^{At} C0 e^{A^T t} + int_0^t e^{As} D e^{A^T s} ds`` for complex symmetric ``C0``."""
    C0 = np.asarray(C0)
    if t == 0:
        return C0.copy()
    eAt, Q = propagator(cm, t)
    C = eAt @ C0 @ eAt.T + Q
    return 0.5 * (C + C.T)


def covariance_derivative(C, cm):
    return cm.A @ C + C @ cm.A.T + cm.D


def stationary_covariance(cm):
    """Solution of ``A C + C A^T + D = 0`` (requires a stable drift)."""
    if np.max(np.linalg.eigvals(cm.A).real) >= 0:
        raise ValueError("drift has no strictly decaying spectrum; no stationary covariance")
    C = solve_continuous_lyapunov(cm.A, -cm.D)
    return 0.5 * (C + C.T)


@dataclass(frozen=True)
class CovarianceTrajectory:
    times: tuple
    matrices: tuple


def covariance_trajectory(C0, cm, times):
    mats = tuple(evolve_covariance(C0, cm, float(t)) for t in times)
    for t, C in zip(times, mats):
        if not _is_posdef(np.real(C)):
            raise ArithmeticError(f"Re C lost positivity at t={t}")
    return CovarianceTrajectory(tuple(float(t) for t in times), mats)


def term_covariance(term):
    """Physical covariance ``(hbar/2) M^{-1}`` of a term."""
    C = 0.5 * term.hbar * np.linalg.inv(term.M)
    return 0.5 * (C + C.T)


def evolve_term(term, cm, t):
    """Evolve one Gaussian term for time ``t``; its integral is unchanged."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return term
    eAt, Q = propagator(cm, t)
    C = eAt @ term_covariance(term) @ eAt.T + Q
    M = 0.5 * term.hbar * np.linalg.inv(C)
    M = 0.5 * (M + M.T)
    if not _is_posdef(M.real):
        raise ArithmeticError("evolved term lost Re M > 0")
    return replace(term, M=M, center=eAt @ term.center)


def evolve_state(state, ch, t):
    """Evolve every term of a Gaussian sum under the channel."""
    if ch.n != state.n or ch.hbar != state.hbar:
        raise ValueError("channel and state disagree on n or hbar")
    cm = channel_matrices(ch)
    return replace(state, terms=tuple(evolve_term(term, cm, t) for term in state.terms))


def fringe_to_hill_ratio(state):
    """Largest interference-term peak over the largest hill peak.

    Terms with a real ``M`` and a real center count as hills.
    """
    hills, fringes = [0.0], [0.0]
    for term in state.terms:
        real = not np.any(term.M.imag) and not np.any(term.center.imag)
        (hills if real else fringes).append(term.envelope_peak())
    return max(fringes) / max(hills)


@dataclass
class SignatureReport:
    """Signatures of ``Re C^{-1}`` and ``Im C^{-1}`` along a trajectory."""

    times: list
    re_signatures: list
    im_signatures: list
    re_C_positive: list
    im_C_nonsingular: list
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def _inverse_signatures(C):
    Cinv = np.linalg.inv(C)
    Cinv = 0.5 * (Cinv + Cinv.T)
    return signature(Cinv.real), signature(Cinv.imag, zero_tol=1e-10 * max(1.0, np.max(np.abs(Cinv))))


def check_signature_preservation(C0, ch, times):
    """Track the inertia of ``Re C(t)^{-1}`` and ``Im C(t)^{-1}``.

    Returns:
        SignatureReport: violations list every time at which a signature
        differs from its initial value, ``Re C`` stops being positive, or
        ``Im C`` becomes singular although ``Im C0`` was not.
    """
    C0 = np.asarray(C0, dtype=complex)
    if not _is_posdef(C0.real):
        raise ValueError("Re C0 must be positive definite")
    cm = channel_matrices(ch)
    re0, im0 = _inverse_signatures(C0)
    im_ns0 = _nonsingular(C0.imag)
    report = SignatureReport([], [], [], [], [])
    for t in times:
        C = evolve_covariance(C0, cm, float(t))
        re_s, im_s = _inverse_signatures(C)
        pos = _is_posdef(C.real)
        ns = _nonsingular(C.imag)
        report.times.append(float(t))
        report.re_signatures.append(re_s)
        report.im_signatures.append(im_s)
        report.re_C_positive.append(pos)
        report.im_C_nonsingular.append(ns)
        if re_s != re0:
            report.violations.append((float(t), f"Re signature {tuple(re_s)} != {tuple(re0)}"))
        if im_s != im0:
            report.violations.append((float(t), f"Im signature {tuple(im_s)} != {tuple(im0)}"))
        if not pos:
            report.violations.append((float(t), "Re C is not positive definite"))
        if im_ns0 and not ns:
            report.violations.append((float(t), "Im C became singular"))
    return report


def _nonsingular(X, rel=1e-10):
    w = np.linalg.eigvalsh(0.5 * (X + X.T))
    scale = max(1e-300, float(np.max(np.abs(w), initial=0.0)))
    return bool(np.all(np.abs(w) > rel * scale)) and scale > 1e-300


__all__ = [
    "ChannelMatrices", "CovarianceTrajectory", "LindbladChannel", "Signature", "SignatureReport",
    "channel_matrices", "check_signature_preservation", "covariance_derivative",
    "covariance_trajectory", "damped_oscillator", "evolve_covariance", "evolve_state",
    "evolve_term", "fringe_to_hill_ratio", "propagator", "stationary_covariance", "term_covariance",
]
