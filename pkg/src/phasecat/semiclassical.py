r"""Swarm of thawed Gaussians in the kicked harmonic oscillator.

The Hamiltonian is

.. math:: H = \tfrac12(p^2 + q^2) + K\cos q \sum_n \delta(t - n\tau).

A state squeezed along ``q`` is written as a superposition of coherent
states centered on the ``q`` axis. Each coherent state is carried along
its classical trajectory by the locally quadratic dynamics: the harmonic
segments are exact and every kick is replaced by its second-order Taylor
expansion around the branch center. The sum of the evolved branches
approximates the exact state.

Time runs from ``t = 0^-``. Each period is a kick followed by a harmonic
rotation by ``tau``; after ``m`` periods the state sits at ``t = m tau^-``.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .cat import PureCat, cat_wigner, classify_fringes, normal_form
from .errors import DeconvolutionIllPosed, GridError
from .oracle import GridWave, quadrature_wigner, sample_wave, split_operator_kho
from .states import GaussianPure
from .symplectic import rotation


@dataclass(frozen=True)
class KHOParams:
    K: float = 2.0
    tau: float = np.pi / 3
    hbar: float = 0.0128
    kicks: int = 2

    def __post_init__(self):
        if self.tau <= 0 or self.hbar <= 0:
            raise ValueError("tau and hbar must be positive")
        if int(self.kicks) != self.kicks or self.kicks < 0:
            raise ValueError("kicks must be a nonnegative integer")


def classical_map(x, params):
    """One period (kick, then rotation by ``tau``) and its Jacobian.

    Returns:
        tuple[array, array]: the new phase-space point and the ``2 x 2`` Jacobian
    """
    q, p = float(x[0]), float(x[1])
    p = p + params.K * np.sin(q)
    shear = np.array([[1.0, 0.0], [params.K * np.cos(float(x[0])), 1.0]])
    R = rotation(params.tau)
    return R @ np.array([q, p]), R @ shear


@dataclass(frozen=True)
class Branch:
    r"""Thawed Gaussian ``exp(alpha + (i/hbar)[gamma y^2/2 + p y])`` with ``y = q - q_c``.

    ``jacobian`` accumulates the linearized flow since ``t = 0^-``.
    """

    center: np.ndarray
    gamma: complex
    alpha: complex
    hbar: float
    jacobian: np.ndarray = field(default_factory=lambda: np.eye(2))

    @property
    def beta(self):
        """Linear coefficient of the exponent in ``y`` (``i p / hbar``)."""
        return 1j * self.center[1] / self.hbar

    def __call__(self, q):
        y = np.asarray(q, dtype=float) - self.center[0]
        return np.exp(self.alpha + 1j / self.hbar * (0.5 * self.gamma * y * y + self.center[1] * y))

    def norm2(self):
        g = self.gamma.imag
        return float(np.exp(2 * self.alpha.real) * np.sqrt(np.pi * self.hbar / g))

    @property
    def covariance(self):
        """Wigner covariance in vacuum units (``hbar/2 = 1``)."""
        x, y = self.gamma.real, self.gamma.imag
        return np.array([[1 / y, x / y], [x / y, y + x * x / y]])

    def to_gaussian(self):
        """``(g, amplitude)`` with ``amplitude * |g> `` equal to the branch."""
        g = GaussianPure(self.jacobian, self.center, self.hbar)
        return g, complex(np.exp(self.alpha - g.wave().alpha))


def coherent_branch(q0, p0, hbar):
    return Branch(np.array([float(q0), float(p0)]), 1j, -0.25 * np.log(np.pi * hbar) + 0j, hbar)


def _harmonic(branch, theta):
    """Exact rotation of a branch by ``theta`` with continuous prefactor tracking."""
    hbar = branch.hbar
    q, p = branch.center
    gamma, alpha = branch.gamma, branch.alpha
    pieces = int(np.ceil(abs(theta) / (np.pi / 2))) or 1
    h = theta / pieces
    c, s = np.cos(h), np.sin(h)
    for _ in range(pieces):
        action = 0.25 * (p * p - q * q) * np.sin(2 * h) + 0.5 * q * p * (np.cos(2 * h) - 1)
        Q = c + s * gamma
        # Im Q > 0 along the piece, so the principal log is the continuous one
        alpha = alpha + 1j * action / hbar - 0.5 * np.log(Q)
        gamma = (-s + c * gamma) / Q
        q, p = c * q + s * p, -s * q + c * p
    J = rotation(theta) @ branch.jacobian
    return replace(branch, center=np.array([q, p]), gamma=complex(gamma), alpha=complex(alpha), jacobian=J)


def _kick(branch, K, frozen=False):
    """Kick ``exp(-i K cos q / hbar)`` expanded to second order at the center."""
    q, p = branch.center
    hbar = branch.hbar
    a, b, c = np.cos(q), -np.sin(q), -0.5 * np.cos(q)
    gamma = branch.gamma if frozen else branch.gamma - 2 * K * c
    shear = np.array([[1.0, 0.0], [0.0 if frozen else -2 * K * c, 1.0]])
    return replace(branch, center=np.array([q, p - K * b]), gamma=complex(gamma),
                   alpha=complex(branch.alpha - 1j * K * a / hbar), jacobian=shear @ branch.jacobian)


def thawed_step(branch, params, frozen=False):
    """One period: local quadratic kick, then exact harmonic rotation by ``tau``.

    Args:
        branch (Branch): state at the start of the period
        params (KHOParams): kick strength and period
        frozen (bool): keep the width fixed through kicks (frozen Gaussians)
    """
    out = _harmonic(_kick(branch, params.K, frozen), params.tau)
    if not out.gamma.imag > 0 or not np.isfinite(out.alpha):
        raise ArithmeticError("branch lost normalizability")
    return out


@dataclass(frozen=True)
class Swarm:
    nodes: np.ndarray
    weights: np.ndarray
    branches: tuple
    hbar: float

    def __len__(self):
        return len(self.branches)


def deconvolution_weight(s, hbar):
    """``C(q')`` for ``|diag(s, 1/s), 0>`` as ``(amplitude, variance)`` of a real Gaussian."""
    if s <= 1:
        raise DeconvolutionIllPosed("the state is not wider than a coherent state along q")
    var = hbar * (s * s - 1)
    return np.sqrt(s) / np.sqrt(2 * np.pi * var), var


def decompose_squeezed(psi0, spacing=None, span=6.5):
    """Coherent states on ``p = 0`` whose weighted sum is ``psi0``.

    Args:
        psi0 (GaussianPure): ``|diag(s, 1/s), (q0, 0)>`` with ``s > 1``
        spacing (float): node spacing; default ``0.4 sqrt(hbar/2)``
        span (float): nodes cover ``q0 +- span`` standard deviations of ``C``

    Returns:
        Swarm: nodes, real weights ``C(q'_j) dq'`` and coherent branches
    """
    S = psi0.S
    if psi0.n != 1 or abs(S[0, 1]) > 1e-12 or abs(S[1, 0]) > 1e-12 or abs(psi0.zeta[1]) > 1e-12:
        raise ValueError("expected a state squeezed along q and centered on the q axis")
    hbar = psi0.hbar
    s = float(S[0, 0])
    if s < 0:
        raise ValueError("use a positive squeeze factor")
    amp, var = deconvolution_weight(s, hbar)
    if spacing is None:
        spacing = 0.4 * np.sqrt(hbar / 2)
    half = int(np.ceil(span * np.sqrt(var) / spacing))
    q0 = float(psi0.zeta[0])
    nodes = q0 + spacing * np.arange(-half, half + 1)
    weights = amp * np.exp(-(nodes - q0) ** 2 / (2 * var)) * spacing
    branches = tuple(coherent_branch(qn, 0.0, hbar) for qn in nodes)
    return Swarm(nodes, weights, branches, hbar)


def propagate_swarm(swarm, params, frozen=False):
    """Apply ``params.kicks`` periods to every branch."""
    branches = list(swarm.branches)
    for _ in range(params.kicks):
        branches = [thawed_step(b, params, frozen) for b in branches]
    return replace(swarm, branches=tuple(branches))


def swarm_wavefunction(swarm, q):
    """Coherent sum ``sum_j C_j branch_j(q)`` (fixed summation order)."""
    q = np.asarray(q, dtype=float)
    out = np.zeros(q.shape, dtype=complex)
    for w, b in zip(swarm.weights, swarm.branches):
        out += w * b(q)
    return out


def swarm_grid(swarm, half_width, count):
    return sample_wave(lambda q: swarm_wavefunction(swarm, q), half_width, count, swarm.hbar)


def reconstruction_residual(psi0, swarm, half_width=None, count=None):
    """``||sum_j C_j phi_j - psi0||`` on a fine grid."""
    hbar = psi0.hbar
    sigma = np.sqrt(hbar / 2) * float(np.max(np.abs(psi0.S)))
    if half_width is None:
        half_width = abs(psi0.zeta[0]) + 12 * sigma
    if count is None:
        count = int(2 * half_width / (0.1 * np.sqrt(hbar / 2))) + 1
    wave = psi0.wave()
    q = np.linspace(-half_width, half_width, count)
    diff = swarm_wavefunction(swarm, q) - wave(q)
    return float(np.sqrt(np.sum(np.abs(diff) ** 2) * (q[1] - q[0])))


def pairwise_cat_demo(swarm, i, j):
    """Cat formed by two evolved branches, with their swarm weights.

    Returns:
        tuple: ``(state, fringe_class)`` where ``state`` is the normalized
        Wigner sum of ``C_i |branch_i> + C_j |branch_j>``
    """
    if i == j:
        raise ValueError("need two different branches")
    g1, a1 = swarm.branches[i].to_gaussian()
    g2, a2 = swarm.branches[j].to_gaussian()
    cat = PureCat(swarm.weights[i] * a1, swarm.weights[j] * a2, g1, g2)
    return cat_wigner(cat), classify_fringes(normal_form(g1.S, g2.S))


@dataclass
class KHOComparison:
    """Exact vs swarm at ``t = kicks * tau^-``."""

    p: np.ndarray
    section_exact: np.ndarray
    section_swarm: np.ndarray
    fidelity: float
    discrepancy: float
    swarm_norm: float
    exact: GridWave = None
    swarm: GridWave = None


def squeezed_initial_state(sigma_q=0.64, hbar=0.0128, q0=0.0):
    """``|diag(s, 1/s), (q0, 0)>`` with position spread ``sigma_q``."""
    s = sigma_q / np.sqrt(hbar / 2)
    return GaussianPure(np.diag([s, 1 / s]), np.array([q0, 0.0]), hbar)


def kho_compare(params, psi0, q_section=-2.0, p_range=(-4.0, 4.0), p_count=401,
                half_width=10.0, count=16384, swarm=None, frozen=False):
    """Run exact and swarm propagation and compare the ``q = q_section`` Wigner section."""
    if psi0.hbar != params.hbar:
        raise ValueError("state and parameters disagree on hbar")
    if swarm is None:
        swarm = decompose_squeezed(psi0)
    exact0 = sample_wave(psi0.wave(), half_width, count, params.hbar)
    exact = split_operator_kho(exact0, params.K, params.tau, params.kicks)
    evolved = propagate_swarm(swarm, params, frozen)
    approx = swarm_grid(evolved, half_width, count)
    nrm = approx.norm()
    if not np.isfinite(nrm) or nrm == 0:
        raise GridError("swarm wavefunction vanished on the grid")
    fidelity = abs(exact.inner(approx)) ** 2 / (exact.norm() ** 2 * nrm ** 2)
    p = np.linspace(p_range[0], p_range[1], p_count)
    w_ex = quadrature_wigner(exact, q_section, p)
    w_sw = quadrature_wigner(approx.with_psi(approx.psi / nrm), q_section, p)
    disc = float(np.linalg.norm(w_ex - w_sw) / np.linalg.norm(w_ex))
    return KHOComparison(p, w_ex, w_sw, float(fidelity), disc, nrm, exact, approx)


__all__ = [
    "Branch", "KHOComparison", "KHOParams", "Swarm", "classical_map", "coherent_branch",
    "decompose_squeezed", "deconvolution_weight", "kho_compare", "pairwise_cat_demo",
    "propagate_swarm", "reconstruction_residual", "squeezed_initial_state", "swarm_grid",
    "swarm_wavefunction", "thawed_step",
]
