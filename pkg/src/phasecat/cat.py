"""Superpositions of two pure Gaussian states and the geometry of their fringes."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOverlap, VanishingNorm
from .states import (ComplexGaussianTerm, GaussianPure, GaussianSumState, cross_wigner,
                     gauss_eval, overlap, sqrt_det, wigner_pure)
from .symplectic import check_symplectic, diagonalize_sst, sympmat, wedge

SYMP_TOL = 1e-10


@dataclass(frozen=True)
class PureCat:
    """``a |U, u> + b |V, v>`` (not necessarily normalized)."""

    a: complex
    b: complex
    g1: GaussianPure
    g2: GaussianPure

    def __post_init__(self):
        if self.g1.n != self.g2.n or self.g1.hbar != self.g2.hbar:
            raise ValueError("both branches must share n and hbar")
        if self.a == 0 and self.b == 0:
            raise VanishingNorm("both amplitudes are zero")

    @property
    def n(self):
        return self.g1.n

    @property
    def hbar(self):
        return self.g1.hbar

    def norm2(self):
        a, b = complex(self.a), complex(self.b)
        ov = overlap(self.g1.wave(), self.g2.wave())
        return (abs(a) ** 2 + abs(b) ** 2 + 2 * (np.conj(a) * b * ov).real).real


@dataclass(frozen=True)
class InterferenceTerm:
    r"""Structured interference term :math:`2|K|\,\mathrm{Re}[e^{i x\wedge\zeta/\hbar + i\phi}\mathcal G(x;G,\eta)]`.

    ``global_phase`` collects ``arg(a* b)``, the constant phase of the matrix
    element and the branch of ``sqrt(det G)``.
    """

    K_magnitude: float
    global_phase: float
    G: np.ndarray
    eta: np.ndarray
    zeta_rel: np.ndarray
    hbar: float

    @property
    def n(self):
        return len(self.eta) // 2

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        val = np.exp(1j * (wedge(x, self.zeta_rel) / self.hbar + self.global_phase)) * gauss_eval(
            self.G, self.eta, x, self.hbar)
        return 2 * self.K_magnitude * np.real(val)


def interference_matrices(U, V, tol=SYMP_TOL):
    """``|K|`` and ``G`` of the interference between ``|U, .>`` and ``|V, .>``.

    Returns:
        tuple[float, array]: ``(|K|, G)`` with
        ``|K| = 2^n / sqrt|det[(U+V) + i(U-V)J]|`` and
        ``G = (UU^T + VV^T)^{-1} [2 - i (UU^T - VV^T) J]``.
    """
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    check_symplectic(U, name="U")
    check_symplectic(V, name="V")
    if U.shape != V.shape:
        raise ValueError("U and V must have the same shape")
    n = U.shape[0] // 2
    J = sympmat(n)
    d = np.linalg.det((U + V) + 1j * (U - V) @ J)
    if abs(d) < 1e-300 or not np.isfinite(d):
        raise DegenerateOverlap("det[(U+V) + i(U-V)J] vanishes")
    K = 2.0 ** n / np.sqrt(abs(d))
    P, Q = U @ U.T, V @ V.T
    G = np.linalg.solve(P + Q, 2 * np.eye(2 * n) - 1j * (P - Q) @ J)
    G = 0.5 * (G + G.T)
    scale = max(1.0, float(np.max(np.abs(G))) ** 2)
    if np.max(np.abs(G @ J @ G.T - J)) > tol * scale * 1e2:
        raise ArithmeticError("G failed the complex-symplectic postcondition")
    return float(K), G


def interference_term(cat):
    """Interference term of a pure cat (without the ``|ab|`` weight)."""
    K, G = interference_matrices(cat.g1.S, cat.g2.S)
    u, v, hbar, n = cat.g1.zeta, cat.g2.zeta, cat.hbar, cat.n
    zeta = u - v
    eta = 0.5 * (u + v)
    W21 = cross_wigner(cat.g1.wave(), cat.g2.wave())
    # constant factor K' = W21 / (e^{i x^zeta/hbar} G(x; G, eta)) read off at the midpoint
    k_full = W21(eta) * np.exp(-1j * wedge(eta, zeta) / hbar) * (np.pi * hbar) ** n / sqrt_det(G)
    a, b = complex(cat.a), complex(cat.b)
    phi_ab = np.angle(np.conj(a) * b) if a != 0 and b != 0 else 0.0
    phase = float(np.angle(np.exp(1j * (phi_ab + np.angle(k_full) + np.angle(sqrt_det(G))))))
    return InterferenceTerm(K, phase, G, eta, zeta, hbar)


def envelope(term, x):
    """Gaussian envelope ``2|K|/(pi hbar)^n exp[-(x-eta) Re G (x-eta)/hbar]``."""
    d = np.asarray(x, dtype=float) - term.eta
    q = np.einsum("...i,ij,...j->...", d, term.G.real, d)
    return 2 * term.K_magnitude / (np.pi * term.hbar) ** term.n * np.exp(-q / term.hbar)


def oscillation_phase(term, x):
    """Phase whose cosine, times :func:`envelope`, gives the interference term.

    ``global_phase + x^zeta/hbar - (x-eta) Im G (x-eta)/hbar``; the Hessian
    in ``x`` is ``-2 Im G / hbar``.
    """
    x = np.asarray(x, dtype=float)
    d = x - term.eta
    q = np.einsum("...i,ij,...j->...", d, term.G.imag, d)
    return term.global_phase + wedge(x, term.zeta_rel) / term.hbar - q / term.hbar


@dataclass(frozen=True)
class NormalForm:
    """Canonical reduction of the quadratic fringe phase.

    In the coordinates ``X = transform @ base_change^{-1} (x - eta)`` the
    quadratic part of the phase is ``sum_i theta_i (Q_i^2 - P_i^2)/hbar``.
    """

    thetas: np.ndarray
    transform: np.ndarray
    base_change: np.ndarray
    residual: float
    lambdas: np.ndarray
    im_G_pulled: np.ndarray


def normal_form(U, V):
    """Reduce ``Im G`` of the pair ``(U, V)`` to ``diag(Xi, -Xi)``.

    The pair is first pulled back to ``(V^{-1} U, I)``; ``O`` diagonalizes
    ``U' U'^T`` and ``H`` rotates each coordinate plane by ``pi/4``.
    """
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    check_symplectic(U, name="U")
    check_symplectic(V, name="V")
    n = U.shape[0] // 2
    J = sympmat(n)
    Up = np.linalg.solve(V, U)
    O, lam_mat = diagonalize_sst(Up)
    lam = np.diag(lam_mat)[:n]
    thetas = (lam - 1) / (lam + 1)
    P = Up @ Up.T
    im_G = -np.linalg.solve(P + np.eye(2 * n), (P - np.eye(2 * n)) @ J)
    im_G = 0.5 * (im_G + im_G.T)
    idn = np.eye(n)
    H = np.block([[idn, idn], [-idn, idn]]) / np.sqrt(2)
    T = H @ O.T
    reduced = -T @ im_G @ T.T
    target = np.diag(np.concatenate([thetas, -thetas]))
    residual = float(np.max(np.abs(reduced - target)))
    return NormalForm(thetas, T, V, residual, lam, im_G)


class FringeClass(enum.Enum):
    LINEAR = "Linear"
    HYPERBOLIC = "Hyperbolic"


def classify_fringes(nf, tol=1e-9):
    """``Linear`` iff every ``theta_i <= tol`` (inclusive)."""
    return FringeClass.LINEAR if np.all(nf.thetas <= tol) else FringeClass.HYPERBOLIC


def cat_wigner(cat):
    """Normalized Wigner function of a pure cat as a four-term Gaussian sum."""
    a, b = complex(cat.a), complex(cat.b)
    t1 = wigner_pure(cat.g1)
    t2 = wigner_pure(cat.g2)
    terms = []
    if a != 0:
        terms.append(ComplexGaussianTerm(abs(a) ** 2, t1.M, t1.center, cat.hbar))
    if b != 0:
        terms.append(ComplexGaussianTerm(abs(b) ** 2, t2.M, t2.center, cat.hbar))
    if a != 0 and b != 0:
        W21 = cross_wigner(cat.g1.wave(), cat.g2.wave())
        cross = ComplexGaussianTerm(np.conj(a) * b * W21.amplitude, W21.M, W21.center, cat.hbar)
        terms.extend([cross, cross.conj()])
    state = GaussianSumState(tuple(terms), cat.n, cat.hbar, "pure cat")
    total = state.integral().real
    if total <= 1e-14 * (abs(a) ** 2 + abs(b) ** 2):
        raise VanishingNorm("the superposition has (numerically) zero norm")
    return state.scaled(1.0 / total)
