"""Brute-force references for one degree of freedom.

Two independent routes to Wigner functions:

* truncated Fock space, ``W(x) = (pi hbar)^{-1} tr(rho T_x R_0 T_x^dagger)``;
* the chord integral of a position-grid wavefunction.

The kicked harmonic oscillator is propagated exactly on a grid by the
split-operator method.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import GridError, TruncationInsufficient
from .symplectic import euler_decompose

DEFAULT_N = 160
MAX_N = 1280
TAIL_TOL = 1e-10


@dataclass(frozen=True)
class FockOperators:
    """Ladder, quadrature and number operators truncated to ``N`` levels.

    ``a = (q + i p)/sqrt(2 hbar)``.
    """

    N: int
    hbar: float = 1.0

    @property
    def a(self):
        return np.diag(np.sqrt(np.arange(1, self.N)), 1).astype(complex)

    @property
    def adag(self):
        return self.a.conj().T

    @property
    def q(self):
        return np.sqrt(self.hbar / 2) * (self.a + self.adag)

    @property
    def p(self):
        return -1j * np.sqrt(self.hbar / 2) * (self.a - self.adag)

    @property
    def number(self):
        return np.diag(np.arange(self.N)).astype(complex)

    def displacement(self, xi):
        """``T_xi = exp(alpha a^dag - alpha^* a)`` with ``alpha = (xi_q + i xi_p)/sqrt(2 hbar)``."""
        alpha = (xi[0] + 1j * xi[1]) / np.sqrt(2 * self.hbar)
        a = self.a
        return expm(alpha * a.conj().T - np.conj(alpha) * a)

    def rotation(self, theta):
        """``exp(-i theta n)``: phase-space rotation by ``theta``."""
        return np.diag(np.exp(-1j * theta * np.arange(self.N)))

    def squeeze(self, r):
        """``exp(r (a^dag^2 - a^2)/2)``: stretches ``q`` by ``e^r``."""
        a = self.a
        return expm(0.5 * r * (a.conj().T @ a.conj().T - a @ a))

    def parity(self):
        return np.diag((-1.0) ** np.arange(self.N)).astype(complex)

    def metaplectic(self, S):
        """Fock matrix of ``M_S`` built from the Euler decomposition.

        Rotation, squeeze, rotation; the resulting operator has a real
        positive vacuum expectation value.
        """
        O, L, Op = euler_decompose(S)
        th1 = np.arctan2(O[0, 1], O[0, 0])
        th2 = np.arctan2(Op[0, 1], Op[0, 0])
        return self.rotation(th1) @ self.squeeze(np.log(L[0, 0])) @ self.rotation(th2)


@dataclass(frozen=True)
class FockDensity:
    rho: np.ndarray
    hbar: float = 1.0

    @property
    def N(self):
        return self.rho.shape[0]

    @classmethod
    def pure(cls, psi, hbar=1.0):
        psi = np.asarray(psi, dtype=complex)
        return cls(np.outer(psi, psi.conj()), hbar)

    def trace(self):
        return np.trace(self.rho).real

    def tail(self, frac=0.9):
        k = int(frac * self.N)
        return float(np.sum(np.abs(np.diag(self.rho)[k:])))

    def check(self, tail_tol=TAIL_TOL):
        if self.tail() > tail_tol:
            raise TruncationInsufficient(f"occupation above 0.9N is {self.tail():.2e} (N={self.N})")
        return self


def _with_escalation(build, N=DEFAULT_N, tail_tol=TAIL_TOL):
    """Call ``build(N)`` doubling ``N`` until the tail criterion passes."""
    while True:
        dens = build(N)
        if dens.tail() <= tail_tol:
            return dens
        if N >= MAX_N:
            raise TruncationInsufficient(f"tail {dens.tail():.2e} still too large at N={N}")
        N *= 2


def _fix_vacuum_phase(psi):
    ph = np.angle(psi[0])
    return psi * np.exp(-1j * ph)


def fock_gaussian_vector(g, N):
    """State vector of ``|S, zeta>`` (n = 1) in the package phase convention."""
    if g.n != 1:
        raise ValueError("Fock oracle supports one degree of freedom")
    ops = FockOperators(N, g.hbar)
    vac = np.zeros(N, dtype=complex)
    vac[0] = 1.0
    psi = _fix_vacuum_phase(ops.metaplectic(g.S) @ vac)
    return ops.displacement(g.zeta) @ psi


def fock_gaussian(g, N=DEFAULT_N, tail_tol=TAIL_TOL):
    """Pure Gaussian density matrix with automatic truncation escalation."""
    return _with_escalation(lambda n: FockDensity.pure(fock_gaussian_vector(g, n), g.hbar), N, tail_tol)


def fock_cat(cat, N=DEFAULT_N, tail_tol=TAIL_TOL):
    """Normalized ``a|U,u> + b|V,v>`` as a Fock density matrix."""

    def build(n):
        psi = cat.a * fock_gaussian_vector(cat.g1, n) + cat.b * fock_gaussian_vector(cat.g2, n)
        psi = psi / np.linalg.norm(psi)
        return FockDensity.pure(psi, cat.hbar)

    return _with_escalation(build, N, tail_tol)


def fock_thermal(nbar, center=(0.0, 0.0), hbar=1.0, N=DEFAULT_N, tail_tol=TAIL_TOL):
    """Displaced thermal state with Bose-Einstein weights."""
    if nbar < 0:
        raise ValueError("nbar must be nonnegative")

    def build(n):
        m = np.arange(n)
        if nbar == 0:
            w = (m == 0).astype(float)
        else:
            w = (nbar / (nbar + 1.0)) ** m / (nbar + 1.0)
        ops = FockOperators(n, hbar)
        D = ops.displacement(np.asarray(center, dtype=float))
        return FockDensity(D @ np.diag(w).astype(complex) @ D.conj().T, hbar)

    return _with_escalation(build, N, tail_tol)


def fock_kerr(dens, mu, nu):
    """Kerr evolution to ``t = (mu/nu) T``: conjugation by ``diag(exp(-2 pi i mu m^2 / nu))``."""
    m = np.arange(dens.N)
    ph = np.exp(-2j * np.pi * mu * (m.astype(float) ** 2 % nu) / nu)
    return FockDensity(ph[:, None] * dens.rho * np.conj(ph)[None, :], dens.hbar)


def fock_wigner_direct(dens, x):
    """``(pi hbar)^{-1} tr(rho T_x R_0 T_x^dagger)`` with explicit matrix exponentials.

    Slow; used to validate :func:`fock_wigner`.
    """
    ops = FockOperators(dens.N, dens.hbar)
    T = ops.displacement(np.asarray(x, dtype=float))
    val = np.trace(dens.rho @ T @ ops.parity() @ T.conj().T)
    return val / (np.pi * dens.hbar)


def _wigner_block(rho, A):
    """Wigner sum for a flat array of points ``A = (q + i p)/sqrt(2 hbar)``."""
    N = rho.shape[0]
    x = 4.0 * np.abs(A) ** 2
    phase = np.exp(1j * np.angle(A))
    alpha = np.arange(N)[:, None]
    # normalized Laguerre functions g_m^alpha(x) = sqrt(m!/(m+alpha)!) x^(alpha/2) e^(-x/2) L_m^alpha(x)
    with np.errstate(divide="ignore"):
        logx = np.log(x)[None, :]
    logx = np.where(np.isfinite(logx), logx, -1e300)
    g_prev = np.zeros((N, len(A)))
    g = np.exp(np.where(alpha > 0, 0.5 * alpha * logx, 0.0) - 0.5 * x[None, :]
               - 0.5 * np.array([math.lgamma(k + 1.0) for k in range(N)])[:, None])
    rot = phase[None, :] ** alpha
    W = np.zeros(len(A), dtype=complex)
    for m in range(N):
        k = N - m
        acc = rho[m, m] * g[0]
        if k > 1:
            wl = rot[1:k] * g[1:k]
            acc = acc + (rho[m, m + 1:, None] * wl + rho[m + 1:, m, None] * np.conj(wl)).sum(axis=0)
        W += (-1) ** m * acc
        if m + 1 < N:
            a = alpha[:k - 1]
            g_next = ((2 * m + 1 + a - x[None, :]) * g[:k - 1]
                      - np.sqrt(m * (m + a)) * g_prev[:k - 1]) / np.sqrt((m + 1) * (m + 1 + a))
            g_prev, g = g[:k - 1], g_next
    return W / np.pi


def fock_symbol(op, q, p, hbar=1.0, chunk=4_000_000):
    """``(pi hbar)^{-1} tr(op T_x R_0 T_x^dagger)`` for any operator in the Fock basis (complex).

    The matrix elements of ``T_x R_0 T_x^dagger`` are Laguerre functions,
    generated by a normalized three-term recursion in the Fock index that
    keeps every element bounded by ``1/pi``.
    """
    op = np.asarray(op, dtype=complex)
    q, p = np.broadcast_arrays(np.asarray(q, dtype=float), np.asarray(p, dtype=float))
    A = ((q + 1j * p) / np.sqrt(2 * hbar)).ravel()
    step = max(1, chunk // op.shape[0])
    blocks = [_wigner_block(op, A[i:i + step]) for i in range(0, len(A), step)]
    out = np.concatenate(blocks) if blocks else np.zeros(0, dtype=complex)
    return out.reshape(q.shape) / hbar


def fock_wigner(dens, q, p, imag_tol=1e-10):
    """Wigner function of a Fock density matrix on arrays ``q``, ``p`` (broadcast)."""
    rho = dens.rho
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > imag_tol * max(1.0, np.max(np.abs(rho))):
        raise ValueError("density matrix is not Hermitian; Wigner function would be complex")
    return np.real(fock_symbol(rho, q, p, dens.hbar))


def fock_wigner_grid(dens, qs, ps):
    """Wigner values on the grid ``qs x ps`` with ``ij`` indexing (q first)."""
    Q, P = np.meshgrid(qs, ps, indexing="ij")
    return fock_wigner(dens, Q, P)


# --------------------------------------------------------------------------- grid wavefunctions


@dataclass(frozen=True)
class GridWave:
    """Wavefunction samples on the periodic grid ``q_j = q0 + j dq``."""

    psi: np.ndarray
    q0: float
    dq: float
    hbar: float

    @property
    def q(self):
        return self.q0 + self.dq * np.arange(len(self.psi))

    @property
    def p(self):
        """FFT-ordered momentum grid."""
        return 2 * np.pi * self.hbar * np.fft.fftfreq(len(self.psi), d=self.dq)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.psi) ** 2) * self.dq))

    def inner(self, other):
        return complex(np.sum(np.conj(self.psi) * other.psi) * self.dq)

    def with_psi(self, psi):
        return GridWave(psi, self.q0, self.dq, self.hbar)


def make_grid(half_width, count, hbar):
    dq = 2 * half_width / count
    return -half_width, dq


def sample_wave(wave_fn, half_width, count, hbar):
    """Sample a callable ``psi(q)`` on a periodic grid over ``[-L, L)``."""
    q0, dq = make_grid(half_width, count, hbar)
    q = q0 + dq * np.arange(count)
    return GridWave(np.asarray(wave_fn(q), dtype=complex), q0, dq, hbar)


def check_boundary(gw, tol=1e-12):
    """Raise if the wavefunction has not decayed at the grid edges."""
    edge = max(np.max(np.abs(gw.psi[:8])), np.max(np.abs(gw.psi[-8:])))
    if edge > tol * max(1.0, np.max(np.abs(gw.psi))):
        raise GridError(f"boundary amplitude {edge:.2e} exceeds {tol:g}")


def check_nyquist(gw, tol=1e-12):
    """Raise if the momentum-space wavefunction reaches the Nyquist edge."""
    phi = np.fft.fft(gw.psi)
    n = len(phi)
    band = np.abs(np.fft.fftshift(phi))
    edge = max(np.max(band[: n // 64 + 1]), np.max(band[-(n // 64 + 1):]))
    if edge > tol * np.max(band):
        raise GridError(f"momentum content at the Nyquist edge ({edge / np.max(band):.2e})")


def shifted_samples(gw, delta):
    """Band-limited interpolation: samples of ``psi(q_j + delta)``."""
    k = 2 * np.pi * np.fft.fftfreq(len(gw.psi), d=gw.dq)
    return np.fft.ifft(np.fft.fft(gw.psi) * np.exp(1j * k * delta))


def quadrature_wigner(gw, q, p, check=True):
    r"""Chord integral :math:`(2\pi\hbar)^{-1}\int dy\,\psi^*(q - y/2)\psi(q + y/2)e^{-ipy/\hbar}`.

    ``q`` is a scalar; ``p`` an array. Off-grid ``q`` is handled by spectral
    interpolation. The integral is a trapezoid sum over the chord samples
    ``y = 2 k dq``.
    """
    if check:
        check_boundary(gw)
    psi = gw.psi
    N = len(psi)
    j = (q - gw.q0) / gw.dq
    j0 = int(np.round(j))
    delta = (j - j0) * gw.dq
    if abs(delta) > 1e-14:
        psi = shifted_samples(gw, delta)
    psi = np.concatenate([psi, np.zeros_like(psi)])  # zero padding instead of wrap-around
    k = np.arange(-min(j0, N - 1 - j0), min(j0, N - 1 - j0) + 1)
    prod = psi[j0 + k] * np.conj(psi[j0 - k])
    y = 2 * gw.dq * k
    p = np.atleast_1d(np.asarray(p, dtype=float))
    phases = np.exp(-1j * np.outer(p, y) / gw.hbar)
    vals = phases @ prod * (2 * gw.dq) / (2 * np.pi * gw.hbar)
    return vals.real


def quadrature_wigner_grid(gw, qs, ps):
    return np.array([quadrature_wigner(gw, qi, ps, check=False) for qi in qs])


# --------------------------------------------------------------------------- kicked oscillator


def _free_phase(gw, t):
    """Exact free evolution ``exp(-i t p^2/(2 hbar))`` via FFT."""
    p = gw.p
    return np.fft.ifft(np.exp(-1j * t * p ** 2 / (2 * gw.hbar)) * np.fft.fft(gw.psi))


def harmonic_rotation(gw, theta):
    """Exact evolution under ``(p^2 + q^2)/2`` for time ``theta``.

    Each step of at most ``pi/2`` factors the rotation into free flight
    ``tan(step/2)``, a quadratic kick ``sin(step)`` and free flight again;
    short steps keep the intermediate state compact on the grid.
    """
    if theta == 0:
        return gw
    pieces = int(np.ceil(abs(theta) / (np.pi / 2)))
    step = theta / pieces
    a = np.tan(step / 2)
    b = np.sin(step)
    out = gw
    for _ in range(pieces):
        psi = _free_phase(out, a) * np.exp(-1j * b * gw.q ** 2 / (2 * gw.hbar))
        out = gw.with_psi(_free_phase(gw.with_psi(psi), a))
    return out


def kick(gw, K):
    return gw.with_psi(gw.psi * np.exp(-1j * K * np.cos(gw.q) / gw.hbar))


def split_operator_kho(gw, K, tau, kicks, check=True):
    """Propagate from ``t = 0^-`` through ``kicks`` periods of kick-then-rotate.

    Kicks act at ``t = 0, tau, ..``; the returned state is the one at
    ``t = kicks * tau^-``, just before the next kick.
    """
    if check:
        check_boundary(gw)
        check_nyquist(gw)
    out = gw
    for _ in range(kicks):
        out = harmonic_rotation(kick(out, K), tau)
    if check:
        check_boundary(out, tol=1e-10)
        check_nyquist(out, tol=1e-10)
    return out
