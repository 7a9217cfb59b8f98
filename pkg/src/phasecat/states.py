r"""Gaussian states, complex Gaussian terms and their closed-form algebra.

Every Wigner function handled by the package is a finite sum of terms

.. math:: a \, \mathcal G(x; M, w) = a \frac{\sqrt{\det M}}{(\pi\hbar)^n}
          e^{-(x-w)\cdot M (x-w)/\hbar}

with complex symmetric ``M`` (``Re M > 0``), complex center ``w`` and
complex amplitude ``a``. Because the kernel is normalized, the integral
of a term over real phase space is exactly ``a``.

Pure Gaussian states ``|S, zeta>`` follow one phase convention throughout
the package: the undisplaced state ``M_S|0>`` has a real positive overlap
with the vacuum, and ``|S, zeta> = T_zeta M_S |0>``.
"""

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import ImaginaryResidueExceeded, NotSymplecticError
from .symplectic import check_symplectic, sympmat

RESIDUE_TOL = 1e-10


def sqrt_det(M):
    """Square root of ``det M`` continued from the positive root along ``Re M + t i Im M``.

    With ``R = Re M > 0`` and ``mu_k`` the (real) eigenvalues of
    ``R^{-1/2} Im M R^{-1/2}``, ``det M = det R * prod(1 + i mu_k)``. Every
    factor stays in the right half-plane along the homotopy, so principal
    roots of the factors give the continuous branch.
    """
    M = np.asarray(M, dtype=complex)
    R = 0.5 * (M.real + M.real.T)
    X = 0.5 * (M.imag + M.imag.T)
    L = np.linalg.cholesky(R)
    Linv = np.linalg.inv(L)
    mu = np.linalg.eigvalsh(Linv @ X @ Linv.T)
    return np.prod(np.diag(L)) * np.prod(np.sqrt(1.0 + 1j * mu))


def log_sqrt_det(M):
    M = np.asarray(M, dtype=complex)
    R = 0.5 * (M.real + M.real.T)
    X = 0.5 * (M.imag + M.imag.T)
    L = np.linalg.cholesky(R)
    Linv = np.linalg.inv(L)
    mu = np.linalg.eigvalsh(Linv @ X @ Linv.T)
    return np.sum(np.log(np.diag(L))) + 0.5 * np.sum(np.log(1.0 + 1j * mu))


def _is_posdef(R):
    try:
        np.linalg.cholesky(0.5 * (R + R.T))
    except np.linalg.LinAlgError:
        return False
    return True


@dataclass(frozen=True)
class QuadraticExp:
    """``f(v) = exp(c + b . v - v . A v / 2)`` over complex coefficients.

    The workhorse for all closed-form Gaussian integrals: products add
    coefficients, linear substitutions pull back, and :meth:`integrate`
    marginalizes variables over the real line.
    """

    A: np.ndarray
    b: np.ndarray
    c: complex = 0.0

    @property
    def dim(self):
        return self.b.shape[0]

    def __mul__(self, other):
        return QuadraticExp(self.A + other.A, self.b + other.b, self.c + other.c)

    def conj(self):
        return QuadraticExp(np.conj(self.A), np.conj(self.b), np.conj(self.c))

    def scale(self, log_factor):
        return QuadraticExp(self.A, self.b, self.c + log_factor)

    def pullback(self, L, offset=None):
        """Compose with ``v -> L v + offset``."""
        L = np.asarray(L)
        if offset is None:
            offset = np.zeros(L.shape[0])
        offset = np.asarray(offset)
        A = L.T @ self.A @ L
        b = L.T @ (self.b - self.A @ offset)
        c = self.c + self.b @ offset - 0.5 * offset @ self.A @ offset
        return QuadraticExp(A, b, c)

    def log(self, v):
        v = np.asarray(v)
        return self.c + v @ self.b - 0.5 * np.einsum("...i,ij,...j->...", v, self.A, v)

    def __call__(self, v):
        return np.exp(self.log(v))

    def integrate(self, idx):
        """Integrate over the real variables ``idx``; the rest are kept in order."""
        idx = np.atleast_1d(np.asarray(idx, dtype=int))
        keep = np.setdiff1d(np.arange(self.dim), idx)
        Ayy = self.A[np.ix_(idx, idx)]
        Ayy = 0.5 * (Ayy + Ayy.T)
        if not _is_posdef(Ayy.real):
            raise ValueError("Gaussian integral diverges: real part of the quadratic form is not positive")
        Ayx = self.A[np.ix_(idx, keep)]
        by = self.b[idx]
        Ainv = np.linalg.inv(Ayy)
        A = self.A[np.ix_(keep, keep)] - Ayx.T @ Ainv @ Ayx
        b = self.b[keep] - Ayx.T @ Ainv @ by
        k = len(idx)
        c = self.c + 0.5 * by @ Ainv @ by + 0.5 * k * np.log(2 * np.pi) - log_sqrt_det(Ayy)
        return QuadraticExp(0.5 * (A + A.T), b, c)

    def total(self):
        """Integral over all variables."""
        return np.exp(self.integrate(np.arange(self.dim)).c)


@dataclass(frozen=True)
class ComplexGaussianTerm:
    """``amplitude * G(x; M, center)`` with complex symmetric ``M``, ``Re M > 0``."""

    amplitude: complex
    M: np.ndarray
    center: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        M = np.asarray(self.M, dtype=complex)
        center = np.asarray(self.center, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
            raise ValueError(f"M must be 2n x 2n, got {M.shape}")
        if center.shape != (M.shape[0],):
            raise ValueError("center dimension does not match M")
        if np.max(np.abs(M - M.T)) > 1e-9 * max(1.0, np.max(np.abs(M))):
            raise ValueError("M must be symmetric")
        if not _is_posdef(M.real):
            raise ValueError("Re M must be positive definite")
        object.__setattr__(self, "M", 0.5 * (M + M.T))
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @property
    def n(self):
        return self.M.shape[0] // 2

    def __call__(self, x):
        return gauss_eval(self.M, self.center, x, self.hbar) * self.amplitude

    def conj(self):
        return ComplexGaussianTerm(np.conj(self.amplitude), np.conj(self.M), np.conj(self.center), self.hbar)

    def to_quadexp(self):
        """Exponent coefficients of the term as a function of ``x``."""
        if self.amplitude == 0:
            raise ValueError("zero-amplitude term has no logarithm")
        A = 2.0 * self.M / self.hbar
        b = A @ self.center
        c = (np.log(self.amplitude) + log_sqrt_det(self.M) - self.n * np.log(np.pi * self.hbar)
             - 0.5 * self.center @ A @ self.center)
        return QuadraticExp(A, b, c)

    @classmethod
    def from_quadexp(cls, q, hbar):
        M = 0.5 * hbar * q.A
        w = np.linalg.solve(q.A, q.b)
        n = q.dim // 2
        log_amp = q.c + 0.5 * q.b @ w + n * np.log(np.pi * hbar) - log_sqrt_det(M)
        return cls(np.exp(log_amp), M, w, hbar)

    @property
    def covariance(self):
        """``M^{-1}`` (the "covariance" in the vacuum-normalized sense)."""
        return np.linalg.inv(self.M)

    def envelope_peak(self):
        """Maximum over real ``x`` of ``|term(x)|``."""
        R = self.M.real
        Mw = self.M @ self.center
        xs = np.linalg.solve(R, Mw.real)
        return float(np.abs(self(xs)))


def gauss_eval(M, zeta, x, hbar=1.0):
    r"""Normalized Gaussian kernel :math:`\sqrt{\det M}(\pi\hbar)^{-n} e^{-(x-\zeta)M(x-\zeta)/\hbar}`.

    ``x`` may carry leading batch dimensions. The square root follows
    :func:`sqrt_det`.
    """
    M = np.asarray(M, dtype=complex)
    if not _is_posdef(M.real):
        raise ValueError("Re M must be positive definite")
    n = M.shape[0] // 2
    d = np.asarray(x) - np.asarray(zeta)
    quad = np.einsum("...i,ij,...j->...", d, M, d)
    return sqrt_det(M) / (np.pi * hbar) ** n * np.exp(-quad / hbar)


def gaussian_integral(term):
    """Integral of a term over real phase space, computed from its exponent coefficients."""
    if term.amplitude == 0:
        return 0j
    return term.to_quadexp().total()


# --------------------------------------------------------------------------- pure states


@dataclass(frozen=True)
class GaussianWave:
    """Position wavefunction ``exp(alpha + (i/hbar)[(q-qc).Z(q-qc)/2 + pc.(q-qc)])``.

    ``Im Z`` must be positive definite.
    """

    Z: np.ndarray
    qc: np.ndarray
    pc: np.ndarray
    alpha: complex = 0.0
    hbar: float = 1.0

    @property
    def n(self):
        return len(self.qc)

    def to_quadexp(self):
        ih = 1j / self.hbar
        Z = np.asarray(self.Z, dtype=complex)
        qc = np.asarray(self.qc, dtype=float)
        pc = np.asarray(self.pc, dtype=float)
        A = -ih * Z
        b = ih * (pc - Z @ qc)
        c = self.alpha + ih * (0.5 * qc @ Z @ qc - pc @ qc)
        return QuadraticExp(A, b, c)

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        if self.n == 1 and q.ndim <= 1 and (q.ndim == 0 or q.shape[-1] != 1):
            q = q[..., None]
        return self.to_quadexp()(q)

    def norm2(self):
        qe = self.to_quadexp()
        return (qe * qe.conj()).total().real


def _wave_exponent_from_covariance(Sigma):
    """``Z = X + iY`` of the centered wavefunction whose Wigner covariance is ``Sigma``."""
    n = Sigma.shape[0] // 2
    Minv = np.linalg.inv(Sigma)
    Mpp = Minv[n:, n:]
    Mpq = Minv[n:, :n]
    Y = np.linalg.inv(Mpp)
    X = -Y @ Mpq
    Z = X + 1j * Y
    return 0.5 * (Z + Z.T)


def vacuum_positive_wave(Sigma, zeta, hbar):
    """Wavefunction of ``|S, zeta>`` in the package phase convention (``Sigma = S S^T``)."""
    n = Sigma.shape[0] // 2
    Z = _wave_exponent_from_covariance(Sigma)
    Y = Z.imag
    log_mod = 0.25 * np.log(np.linalg.det(Y)) - 0.25 * n * np.log(np.pi * hbar)
    # <0|S,0> ∝ 1/sqrt det(I - iZ): cancel its phase
    phase = np.angle(sqrt_det(np.eye(n) - 1j * Z))
    zeta = np.asarray(zeta, dtype=float)
    qz, pz = zeta[:n], zeta[n:]
    # T_zeta contributes exp(i pz.(q - qz/2)/hbar)
    alpha = log_mod + 1j * phase + 1j * (pz @ qz) / (2 * hbar)
    return GaussianWave(Z, qz, pz, alpha, hbar)


@dataclass(frozen=True)
class GaussianPure:
    """Pure Gaussian state ``|S, zeta> = T_zeta M_S |0>``."""

    S: np.ndarray
    zeta: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        zeta = np.asarray(self.zeta, dtype=float)
        check_symplectic(S, name="S")
        if zeta.shape != (S.shape[0],):
            raise ValueError("zeta dimension does not match S")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "zeta", zeta)

    @property
    def n(self):
        return self.S.shape[0] // 2

    @property
    def covariance(self):
        return self.S @ self.S.T

    def wave(self):
        return vacuum_positive_wave(self.covariance, self.zeta, self.hbar)


def wigner_pure(g):
    """Wigner function of ``|S, zeta>`` as a single real term ``G[x; (S S^T)^{-1}, zeta]``."""
    M = np.linalg.inv(g.covariance)
    return ComplexGaussianTerm(1.0, 0.5 * (M + M.T), g.zeta, g.hbar)


def chi_pure(g, xi):
    """Characteristic function ``2^{-n} G[xi/2; (S S^T)^{-1}, 0] exp(i zeta^xi/hbar)``."""
    from .symplectic import wedge

    xi = np.asarray(xi, dtype=float)
    M = np.linalg.inv(g.covariance)
    return 2.0 ** (-g.n) * gauss_eval(M, np.zeros(2 * g.n), xi / 2, g.hbar) * np.exp(
        1j * wedge(g.zeta, xi) / g.hbar)


def cross_wigner(w1, w2):
    r"""Cross Wigner function of ``|psi2><psi1|`` as a complex Gaussian term.

    Equals :math:`(\pi\hbar)^{-n}\langle\psi_1|\hat R_x|\psi_2\rangle`, computed
    from the chord integral in the position representation.
    """
    if w2.n != w1.n or w2.hbar != w1.hbar:
        raise ValueError("wavefunctions must share n and hbar")
    return chord_transform(w2.to_quadexp(), w1.to_quadexp(), w1.n, w1.hbar)


def chord_transform(ket, bra, n, hbar, weight=None):
    r"""Wigner symbol of ``int dz w(z) |ket(z)><bra(z)|``.

    Args:
        ket, bra (QuadraticExp): wavefunctions over ``(q, z)`` with ``z`` a
            latent real vector of any length ``r >= 0``
        n (int): degrees of freedom
        hbar (float): Planck constant
        weight (QuadraticExp or None): density over ``z`` (required when ``r > 0``)

    Returns:
        ComplexGaussianTerm: ``(2 pi hbar)^{-n} int dz dy w(z) ket(q + y/2, z)
        conj(bra(q - y/2, z)) e^{-i p.y/hbar}``
    """
    r = ket.dim - n
    if bra.dim != ket.dim or r < 0:
        raise ValueError("ket and bra must live on the same (q, z) space")
    dim = 3 * n + r
    idn = np.eye(n)

    def embed(sign):
        L = np.zeros((n + r, dim))
        L[:n, :n] = idn
        L[:n, 2 * n:3 * n] = 0.5 * sign * idn
        L[n:, 3 * n:] = np.eye(r)
        return L

    f = ket.pullback(embed(1.0)) * bra.conj().pullback(embed(-1.0))
    A_extra = np.zeros((dim, dim), dtype=complex)
    A_extra[n:2 * n, 2 * n:3 * n] = 1j / hbar * idn
    A_extra[2 * n:3 * n, n:2 * n] = 1j / hbar * idn
    f = f * QuadraticExp(A_extra, np.zeros(dim, dtype=complex), 0.0)
    if r:
        if weight is None or weight.dim != r:
            raise ValueError("a weight over the latent variables is required")
        L = np.zeros((r, dim))
        L[:, 3 * n:] = np.eye(r)
        f = f * weight.pullback(L)
    g = f.integrate(np.arange(2 * n, dim)).scale(-n * np.log(2 * np.pi * hbar))
    return ComplexGaussianTerm.from_quadexp(g, hbar)


def displaced_family(S, a, L, hbar, phase=None, log_const=0.0):
    r"""Wavefunction of ``e^{c + i k.z} |S, a + L z>`` over ``(q, z)``.

    Args:
        S (array): symplectic matrix of the family
        a (array): center at ``z = 0``
        L (array): ``2n x r`` map from latent variables to displacements
        hbar (float): Planck constant
        phase (array or None): ``k``, a real linear phase in ``z``
        log_const (complex): ``c``

    Returns:
        QuadraticExp: function of ``(q, z)``
    """
    S = np.asarray(S, dtype=float)
    n = S.shape[0] // 2
    L = np.asarray(L, dtype=float).reshape(2 * n, -1)
    r = L.shape[1]
    w0 = vacuum_positive_wave(S @ S.T, np.zeros(2 * n), hbar)
    Z = np.asarray(w0.Z, dtype=complex)
    idn = np.eye(n)
    # exponent (i/hbar)[q.Zq/2 - q.Z qz + qz.Z qz/2 + pz.q - pz.qz/2] over (q, qz, pz)
    H = np.zeros((3 * n, 3 * n), dtype=complex)
    H[:n, :n] = Z
    H[:n, n:2 * n] = -Z
    H[n:2 * n, :n] = -Z
    H[n:2 * n, n:2 * n] = Z
    H[:n, 2 * n:] = idn
    H[2 * n:, :n] = idn
    H[n:2 * n, 2 * n:] = -0.5 * idn
    H[2 * n:, n:2 * n] = -0.5 * idn
    base = QuadraticExp(-1j / hbar * H, np.zeros(3 * n, dtype=complex), w0.alpha + log_const)
    P = np.zeros((3 * n, n + r))
    P[:n, :n] = idn
    P[n:, n:] = L
    offset = np.concatenate([np.zeros(n), np.asarray(a, dtype=float)])
    fam = base.pullback(P, offset)
    if phase is not None:
        k = np.zeros(n + r, dtype=complex)
        k[n:] = 1j * np.asarray(phase, dtype=float)
        fam = fam * QuadraticExp(np.zeros((n + r, n + r), dtype=complex), k, 0.0)
    return fam


def overlap(w1, w2):
    """``<psi1|psi2>``."""
    return (w1.to_quadexp().conj() * w2.to_quadexp()).total()


# --------------------------------------------------------------------------- sums


@dataclass(frozen=True)
class GaussianSumState:
    """A Wigner function written as a finite sum of complex Gaussian terms."""

    terms: tuple
    n: int
    hbar: float = 1.0
    label: str = ""

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.n != self.n:
                raise ValueError("all terms must share the number of degrees of freedom")
            if t.hbar != self.hbar:
                raise ValueError("mixing terms with different hbar")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def single(cls, term, label=""):
        return cls((term,), term.n, term.hbar, label)

    def integral(self):
        """Analytic integral of the sum (sum of term integrals)."""
        return sum((gaussian_integral(t) for t in self.terms), 0j)

    def scaled(self, factor):
        return replace(self, terms=tuple(replace(t, amplitude=t.amplitude * factor) for t in self.terms))

    def normalized(self):
        total = self.integral()
        if abs(total) < 1e-300:
            raise ValueError("state has vanishing integral")
        return self.scaled(1.0 / total.real)

    def __call__(self, x):
        return eval_state(self, x)

    def __add__(self, other):
        if other.n != self.n or other.hbar != self.hbar:
            raise ValueError("incompatible states")
        return GaussianSumState(self.terms + other.terms, self.n, self.hbar, self.label)


def eval_state(state, x, residue_tol=RESIDUE_TOL):
    """Pointwise real value of a Gaussian sum.

    Raises:
        ImaginaryResidueExceeded: if ``|Im W| > residue_tol * sum|terms|`` at any point.
    """
    x = np.asarray(x, dtype=float)
    total = 0j
    scale = 0.0
    for t in state.terms:
        v = t(x)
        total = total + v
        scale = scale + np.abs(v)
    bad = np.abs(np.imag(total)) > residue_tol * np.maximum(scale, 1e-300)
    if np.any(bad):
        worst = float(np.max(np.abs(np.imag(total)) / np.maximum(scale, 1e-300)))
        raise ImaginaryResidueExceeded(f"imaginary residue {worst:.3e} exceeds {residue_tol:g}")
    return np.real(total)


def apply_translation(state, xi):
    """``W(x) -> W(x - xi)``."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (2 * state.n,):
        raise ValueError("translation vector has the wrong dimension")
    return replace(state, terms=tuple(replace(t, center=t.center + xi) for t in state.terms))


def apply_metaplectic(state, S):
    """``W(x) -> W(S^{-1} x)``: ``M -> S^{-T} M S^{-1}``, center ``-> S center``."""
    S = np.asarray(S, dtype=float)
    check_symplectic(S, name="S")
    if S.shape[0] != 2 * state.n:
        raise NotSymplecticError("S has the wrong dimension")
    Sinv = np.linalg.inv(S)
    terms = tuple(replace(t, M=Sinv.T @ t.M @ Sinv, center=S @ t.center) for t in state.terms)
    return replace(state, terms=terms)


def overlap_integral(s1, s2):
    """``int W1(x) W2(x) dx`` in closed form."""
    total = 0j
    for t1 in s1.terms:
        if t1.amplitude == 0:
            continue
        q1 = t1.to_quadexp()
        for t2 in s2.terms:
            if t2.amplitude == 0:
                continue
            total += (q1 * t2.to_quadexp()).total()
    return total


def purity(state):
    """``(2 pi hbar)^n int W^2``."""
    return ((2 * np.pi * state.hbar) ** state.n * overlap_integral(state, state)).real


# --------------------------------------------------------------------------- grids


@dataclass(frozen=True)
class WignerGrid:
    """Samples of a Wigner function on a rectangular grid.

    ``values`` has one axis per phase-space coordinate, in ``(q.., p..)``
    order, with ``ij`` indexing.
    """

    axes: tuple
    values: np.ndarray
    hbar: float
    description: str = ""
    meta: dict = field(default_factory=dict)

    def coords(self):
        return [np.linspace(lo, hi, int(cnt)) for lo, hi, cnt in self.axes]

    def cell_volume(self):
        return float(np.prod([(hi - lo) / (cnt - 1) for lo, hi, cnt in self.axes]))

    def riemann_sum(self):
        return float(np.sum(self.values) * self.cell_volume())


def sample_grid(state, axes: Sequence, description=""):
    """Evaluate ``state`` on the product grid given by ``(min, max, count)`` per axis."""
    axes = tuple((float(lo), float(hi), int(cnt)) for lo, hi, cnt in axes)
    if len(axes) != 2 * state.n:
        raise ValueError(f"need {2 * state.n} axes, got {len(axes)}")
    if any(cnt < 2 for _, _, cnt in axes):
        raise ValueError("each axis needs at least 2 points")
    coords = [np.linspace(lo, hi, cnt) for lo, hi, cnt in axes]
    mesh = np.stack(np.meshgrid(*coords, indexing="ij"), axis=-1)
    values = eval_state(state, mesh)
    if not np.all(np.isfinite(values)):
        raise ValueError("non-finite Wigner values")
    return WignerGrid(axes, values, state.hbar, description or state.label)


def vacuum(n=1, hbar=1.0):
    return GaussianPure(np.eye(2 * n), np.zeros(2 * n), hbar)


__all__ = [
    "ComplexGaussianTerm", "GaussianPure", "GaussianSumState", "GaussianWave", "QuadraticExp",
    "WignerGrid", "apply_metaplectic", "apply_translation", "chi_pure", "cross_wigner",
    "chord_transform", "displaced_family", "eval_state", "gauss_eval", "gaussian_integral", "overlap", "overlap_integral", "purity",
    "sample_grid", "sqrt_det", "vacuum", "vacuum_positive_wave", "wigner_pure", "sympmat",
]
