r"""Mixed Gaussian cats: conditional superpositions and Kerr fractional revivals.

A Gaussian density operator ``rho0`` is acted on by sums of linear unitaries
``U = T_xi M_S``. Each product ``U_A rho0 U_B^dagger`` has a Wigner symbol
that is a single complex Gaussian term. It is obtained by writing ``rho0``
as a Gaussian-weighted mixture of displaced pure states
``|S0, eta0 + L z>`` and integrating the latent displacement ``z`` in
closed form together with the chord variable.

At ``t = (mu/nu) T`` the Kerr propagator ``exp(-2 pi i mu n^2 / nu)`` is a
finite sum of rotations ``exp(-2 pi i k n / L)``, so the evolved state is a
finite sum of such symbols.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import VanishingNorm
from .states import (ComplexGaussianTerm, GaussianPure, GaussianSumState, QuadraticExp,
                     chord_transform, displaced_family, overlap)
from .symplectic import check_symplectic, sympmat, wedge, williamson

NONZERO_TOL = 1e-9


@dataclass(frozen=True)
class GaussianMixed:
    """Gaussian density operator with Wigner function ``G(x; M, center)`` (``M`` real).

    Physical states need ``M^{-1} >= S S^T`` for some symplectic ``S``,
    i.e. all symplectic eigenvalues of ``M^{-1}`` at least 1.
    """

    M: np.ndarray
    center: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        M = np.asarray(self.M, dtype=float)
        center = np.asarray(self.center, dtype=float)
        if center.shape != (M.shape[0],):
            raise ValueError("center dimension does not match M")
        S0, d = williamson(np.linalg.inv(M))
        if d[0] < 1 - 1e-9:
            raise ValueError(f"not a physical state: symplectic eigenvalue {d[0]:.3g} < 1")
        object.__setattr__(self, "M", 0.5 * (M + M.T))
        object.__setattr__(self, "center", center)

    @property
    def n(self):
        return self.M.shape[0] // 2

    def wigner(self):
        return ComplexGaussianTerm(1.0, self.M, self.center, self.hbar)

    @cached_property
    def mixture(self):
        """``(S0, L)``: ``rho = E_z |S0, center + L z><S0, center + L z|`` with ``z ~ N(0, I)``."""
        S0, d = williamson(np.linalg.inv(self.M))
        n = self.n
        cols = [i for i in range(n) if d[i] > 1 + 1e-12]
        scale = np.sqrt(0.5 * self.hbar * (np.maximum(d, 1.0) - 1.0))
        L = np.column_stack([S0[:, i] * scale[i] for i in cols]
                            + [S0[:, n + i] * scale[i] for i in cols]) if cols else np.zeros((2 * n, 0))
        return S0, L


@dataclass(frozen=True)
class ThermalState:
    """Displaced thermal state with mean occupation ``nbar`` per mode."""

    nbar: float
    center: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        if self.nbar < 0:
            raise ValueError("nbar must be nonnegative")
        center = np.asarray(self.center, dtype=float)
        if center.ndim != 1 or center.shape[0] % 2:
            raise ValueError("center must be a 2n phase-space vector")
        object.__setattr__(self, "center", center)

    @property
    def n(self):
        return len(self.center) // 2

    def to_mixed(self):
        return GaussianMixed(np.eye(2 * self.n) / (2 * self.nbar + 1), self.center, self.hbar)


def thermal_wigner(ts):
    """``G(x; I/(2 nbar + 1), center)``."""
    return ComplexGaussianTerm(1.0, np.eye(2 * ts.n) / (2 * ts.nbar + 1), ts.center, ts.hbar)


def chi_thermal(ts, xi):
    r"""Characteristic function of the thermal state centered at the origin.

    :math:`\chi_{th}(\xi) = (2\pi\hbar)^{-n} e^{-(2\bar n+1)|\xi|^2/(4\hbar)}`.
    """
    xi = np.asarray(xi, dtype=float)
    return (2 * np.pi * ts.hbar) ** (-ts.n) * np.exp(
        -(2 * ts.nbar + 1) * np.sum(xi ** 2, axis=-1) / (4 * ts.hbar))


def _as_mixed(rho0):
    if isinstance(rho0, ThermalState):
        return rho0.to_mixed()
    if isinstance(rho0, GaussianPure):
        return GaussianMixed(np.linalg.inv(rho0.covariance), rho0.zeta, rho0.hbar)
    if isinstance(rho0, GaussianMixed):
        return rho0
    raise TypeError(f"unsupported Gaussian state {type(rho0).__name__}")


@dataclass(frozen=True)
class LinearOp:
    """The unitary ``T_xi M_S`` (metaplectic part normalized by ``<0|M_S|0> > 0``)."""

    S: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        xi = np.asarray(self.xi, dtype=float)
        check_symplectic(S, name="S")
        if xi.shape != (S.shape[0],):
            raise ValueError("xi dimension does not match S")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "xi", xi)

    @property
    def n(self):
        return self.S.shape[0] // 2

    @classmethod
    def identity(cls, n=1):
        return cls(np.eye(2 * n), np.zeros(2 * n))

    @classmethod
    def displacement(cls, xi):
        xi = np.asarray(xi, dtype=float)
        return cls(np.eye(len(xi)), xi)

    @classmethod
    def rotation(cls, theta, n=1):
        """``exp(-i theta N)`` with ``N`` the total number operator."""
        c, s = np.cos(theta), np.sin(theta)
        idn = np.eye(n)
        return cls(np.block([[c * idn, s * idn], [-s * idn, c * idn]]), np.zeros(2 * n))

    @classmethod
    def parity(cls, n=1):
        return cls(-np.eye(2 * n), np.zeros(2 * n))


def _branch(op, mixed):
    """Family ``U |S0, center + L z>`` over ``(q, z)``."""
    S0, L = mixed.mixture
    hbar = mixed.hbar
    n = mixed.n
    # M_S M_S0 |0> = c |S S0, 0>, with arg c = arg <S^{-1}, 0 | S0, 0>
    c = overlap(GaussianPure(np.linalg.inv(op.S), np.zeros(2 * n), hbar).wave(),
                GaussianPure(S0, np.zeros(2 * n), hbar).wave())
    # T_xi |S', zeta'> = exp(i xi^zeta' / 2 hbar) |S', zeta' + xi> with zeta' = S zeta
    k = op.S.T @ sympmat(n) @ op.xi
    log_const = 1j * (np.angle(c) + k @ mixed.center / (2 * hbar))
    return displaced_family(op.S @ S0, op.xi + op.S @ mixed.center, op.S @ L, hbar,
                            phase=L.T @ k / (2 * hbar), log_const=log_const)


def _latent_weight(r):
    return QuadraticExp(np.eye(r, dtype=complex), np.zeros(r, dtype=complex), -0.5 * r * np.log(2 * np.pi))


def cross_term_symbol(opA, rho0, opB):
    r"""Wigner symbol :math:`(\pi\hbar)^{-n}\mathrm{tr}(\hat U_A\hat\rho_0\hat U_B^\dagger\hat R_x)`.

    Args:
        opA, opB (LinearOp): the two unitaries
        rho0 (ThermalState, GaussianMixed or GaussianPure): Gaussian input

    Returns:
        ComplexGaussianTerm: the symbol; real when ``opA == opB``
    """
    mixed = _as_mixed(rho0)
    if opA.n != mixed.n or opB.n != mixed.n:
        raise ValueError("operators and state disagree on n")
    ketA = _branch(opA, mixed)
    ketB = _branch(opB, mixed)
    r = ketA.dim - mixed.n
    weight = _latent_weight(r) if r else None
    return chord_transform(ketA, ketB, mixed.n, mixed.hbar, weight)


def _assemble(pairs, rho0, label):
    mixed = _as_mixed(rho0)
    terms = []
    for coeff, opA, opB in pairs:
        if coeff == 0:
            continue
        t = cross_term_symbol(opA, mixed, opB)
        terms.append(ComplexGaussianTerm(coeff * t.amplitude, t.M, t.center, t.hbar))
    state = GaussianSumState(tuple(terms), mixed.n, mixed.hbar, label)
    total = state.integral().real
    if total <= 1e-12:
        raise VanishingNorm("the superposition annihilates the state")
    return state.scaled(1.0 / total)


def conditional_cat(rho0, op, sign=1):
    """Normalized ``(1 +- U) rho0 (1 +- U^dagger)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = op.n
    eye = LinearOp.identity(n)
    pairs = [(1.0, eye, eye), (sign, op, eye), (sign, eye, op), (1.0, op, op)]
    return _assemble(pairs, rho0, f"conditional cat ({'+' if sign > 0 else '-'})")


@dataclass(frozen=True)
class KerrCoefficients:
    """Fourier coefficients with ``sum_k c_k e^{-2 pi i k m / L} = e^{-2 pi i mu m^2 / nu}``."""

    mu: int
    nu: int
    L: int
    coeffs: np.ndarray

    @property
    def nonzero(self):
        return np.flatnonzero(np.abs(self.coeffs) > 0)

    @property
    def component_count(self):
        return len(self.nonzero)

    def angles(self):
        return 2 * np.pi * self.nonzero / self.L

    def reconstruction_error(self):
        m = np.arange(self.L)
        target = np.exp(-2j * np.pi * ((self.mu * m * m) % self.nu) / self.nu)
        k = np.arange(self.L)
        recon = np.exp(-2j * np.pi * np.outer(m, k) / self.L) @ self.coeffs
        return float(np.max(np.abs(recon - target)))


def kerr_coefficients(mu, nu):
    """Rotation expansion of the Kerr propagator at ``t = (mu/nu) T``.

    ``L = nu`` when ``mu nu`` is even, ``2 nu`` otherwise. Coefficients below
    ``1e-9`` in modulus are set to zero exactly.
    """
    mu, nu = int(mu), int(nu)
    if mu < 1 or nu < 1:
        raise ValueError("mu and nu must be positive integers")
    if math.gcd(mu, nu) != 1:
        raise ValueError(f"mu={mu} and nu={nu} are not coprime")
    L = nu if (mu * nu) % 2 == 0 else 2 * nu
    m = np.arange(L)
    f = np.exp(-2j * np.pi * ((mu * m * m) % nu) / nu)
    c = np.exp(2j * np.pi * np.outer(np.arange(L), m) / L) @ f / L
    c[np.abs(c) < NONZERO_TOL] = 0.0
    return KerrCoefficients(mu, nu, L, c)


def kerr_cat(rho0, mu, nu):
    """State ``K rho0 K^dagger`` with ``K = exp(-2 pi i mu N^2 / nu)`` as a Gaussian sum."""
    mixed = _as_mixed(rho0)
    kc = kerr_coefficients(mu, nu)
    ops = {k: LinearOp.rotation(2 * np.pi * k / kc.L, mixed.n) for k in kc.nonzero}
    pairs = [(kc.coeffs[k] * np.conj(kc.coeffs[j]), ops[k], ops[j]) for k in kc.nonzero for j in kc.nonzero]
    return _assemble(pairs, mixed, f"Kerr cat mu={mu} nu={nu}")


def binary_kerr_wigner(ts, x):
    r"""Closed form of the two-component Kerr cat of a displaced thermal state.

    :math:`2W'(x) = W_{th}(x+\eta) + W_{th}(x-\eta) - 4\sin(x\wedge 2\eta/\hbar)\,\chi_{th}(2x)`
    where ``eta`` is the center of ``ts`` and ``W_th``, ``chi_th`` refer to the
    thermal state at the origin.
    """
    x = np.asarray(x, dtype=float)
    eta = ts.center
    w0 = thermal_wigner(ThermalState(ts.nbar, np.zeros_like(eta), ts.hbar))
    hills = w0(x + eta).real + w0(x - eta).real
    fringe = -4 * np.sin(wedge(x, 2 * eta) / ts.hbar) * chi_thermal(ts, 2 * x)
    return 0.5 * (hills + fringe)


def binary_kerr_state(ts):
    """The closed form of :func:`binary_kerr_wigner` as a four-term Gaussian sum."""
    n, hbar, eta = ts.n, ts.hbar, ts.center
    w = 2 * ts.nbar + 1
    M = np.eye(2 * n) / w
    terms = [ComplexGaussianTerm(0.5, M, eta, hbar), ComplexGaussianTerm(0.5, M, -eta, hbar)]
    # -2 sin(x.k) chi(2x) = i [e^{i x.k} - e^{-i x.k}] chi(2x) with k = 2 J^T eta / hbar
    k = 2 * sympmat(n).T @ eta / hbar
    A = 2 * w / hbar * np.eye(2 * n)
    c0 = -n * np.log(2 * np.pi * hbar)
    for sgn in (1, -1):
        q = QuadraticExp(A.astype(complex), 1j * sgn * k, c0 + np.log(1j * sgn + 0j))
        terms.append(ComplexGaussianTerm.from_quadexp(q, hbar))
    return GaussianSumState(tuple(terms), n, hbar, "binary Kerr cat")


def fringe_fwhm(nbar, hbar=1.0):
    """FWHM of the ``chi_th(2x)`` envelope along any phase-space direction."""
    if nbar < 0:
        raise ValueError("nbar must be nonnegative")
    return 2 * np.sqrt(hbar * np.log(2) / (2 * nbar + 1))


def fringe_widths(state, decimals=10):
    """Distinct FWHMs of the interference envelopes of a Gaussian sum, ascending.

    A term counts as interference when its matrix or center is complex. Each
    width is taken along the direction where that envelope is narrowest.
    """
    widths = {round(float(2 * np.sqrt(t.hbar * np.log(2) / np.linalg.eigvalsh(t.M.real).max())), decimals)
              for t in state.terms if np.any(t.center.imag) or np.any(t.M.imag)}
    return sorted(widths)


def fringe_width(state):
    """Narrowest interference envelope; for antipodal copies this is ``chi_th(2x)``."""
    widths = fringe_widths(state)
    if not widths:
        raise ValueError("state has no interference terms")
    return widths[0]


__all__ = [
    "GaussianMixed", "KerrCoefficients", "LinearOp", "ThermalState", "binary_kerr_state",
    "binary_kerr_wigner", "chi_thermal", "conditional_cat", "cross_term_symbol", "fringe_fwhm",
    "fringe_width", "fringe_widths", "kerr_cat", "kerr_coefficients", "thermal_wigner",
]
