"""Noise channel of a resonantly driven qubit in a waveguide.

A single-qubit rotation by theta about x is driven by a square pulse carrying
n_g photons on average.  Driving and spontaneous emission share the same
waveguide, which ties the Rabi frequency to the emission rate gamma:
Omega = 4 gamma n_g / theta, and the pulse lasts tau = theta / Omega.

The simulation integrates the rotating-frame master equation

    drho/dt = -i [ (Omega/2) sigma_x, rho ] + gamma D(rho),
    D(rho)  = sigma_- rho sigma_+ - (sigma_+ sigma_- rho + rho sigma_+ sigma_-)/2,

over the pulse (the drive is time-independent in this frame; the lab-frame
oscillation at omega0 is never integrated, it only enters the validity check
n_g << omega0/gamma).  The noise map E is the noisy gate with the ideal
rotation divided out, E = G^{-1} o G_noisy; its Pauli-transfer matrix and the
diagonal of its chi (process) matrix: the X/Y/Z error probabilities: are
what the error-correction analysis consumes.

The integrator is a fixed-step classical 4th-order Runge-Kutta: deterministic
step counts keep results bitwise reproducible, and convergence is asserted by
comparing against a halved step.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .scheme import PI_SQ_OVER_16

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)  # |0><0| - |1><1|
IDENTITY = np.eye(2, dtype=complex)
PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)

# sigma_- = |0><1| lowers the excited state |1> into the ground state |0>.
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T

# chi-diagonal extraction: s_alpha = chi00 + chi_aa - sum_{b != 0,a} chi_bb
# for s_alpha = (1/2) Tr{sigma_a E(sigma_a)}; the coefficient matrix is its
# own inverse up to the factor 4.
_CHI_COEFF = np.array(
    [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)
assert abs(np.linalg.det(_CHI_COEFF)) > 1.0  # fixed, invertible by construction

TP_TOL = 1e-9
CP_TOL = -1e-8
CONVERGENCE_TOL = 1e-9
RWA_FRACTION = 0.01  # warn when n_g >= RWA_FRACTION * omega0/gamma


class ConvergenceError(RuntimeError):
    """Integration did not converge under step halving."""


@dataclass(frozen=True)
class GateSpec:
    """Driven-gate parameters: rotation angle, emission rate, photon budget.

    omega0 (the qubit frequency) only feeds the rotating-wave validity check
    and energy accounting; None disables the check.
    """

    theta: float
    gamma: float
    n_g: float
    omega0: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 2.0 * math.pi:
            raise ValueError(f"theta must lie in (0, 2*pi], got {self.theta!r}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma!r}")
        if self.n_g <= 0:
            raise ValueError(f"n_g must be > 0, got {self.n_g!r}")
        if self.omega0 is not None and self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0!r}")

    @property
    def rwa_margin(self) -> float:
        """(omega0/gamma) / n_g; values <= 100 are marginal for the RWA."""
        if self.omega0 is None:
            return math.inf
        return (self.omega0 / self.gamma) / self.n_g


@dataclass(frozen=True)
class BlochState:
    """Bloch vector of a unit-trace qubit state."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if self.norm > 1.0 + 1e-9:
            raise ValueError(f"Bloch vector leaves the unit ball: {self}")

    @property
    def norm(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    @classmethod
    def from_density(cls, rho: np.ndarray) -> "BlochState":
        return cls(
            x=float(np.trace(SIGMA_X @ rho).real),
            y=float(np.trace(SIGMA_Y @ rho).real),
            z=float(np.trace(SIGMA_Z @ rho).real),
        )

    def to_density(self) -> np.ndarray:
        return 0.5 * (
            IDENTITY + self.x * SIGMA_X + self.y * SIGMA_Y + self.z * SIGMA_Z
        )


@dataclass(frozen=True)
class QubitChannel:
    """Noise map in Pauli-transfer representation plus its chi diagonal.

    ptm is the 4x4 real transfer matrix in the (1, x, y, z) basis; chi_diag
    is (chi00, p_x, p_y, p_z).  Construction enforces trace preservation,
    complete positivity (Choi spectrum) and the chi normalization.
    """

    ptm: np.ndarray
    chi_diag: tuple[float, float, float, float]
    converged: bool = True
    rwa_margin: float = math.inf

    def __post_init__(self) -> None:
        ptm = np.asarray(self.ptm, dtype=float)
        object.__setattr__(self, "ptm", ptm)
        if ptm.shape != (4, 4):
            raise ValueError(f"ptm must be 4x4, got {ptm.shape}")
        first_row_err = np.max(np.abs(ptm[0] - np.array([1.0, 0, 0, 0])))
        if first_row_err > TP_TOL:
            raise ValueError(f"channel is not trace preserving ({first_row_err:.2e})")
        eigmin = float(np.min(np.linalg.eigvalsh(choi_from_ptm(ptm))))
        if eigmin < CP_TOL:
            raise ValueError(f"channel is not completely positive ({eigmin:.2e})")
        if sum(self.chi_diag) > 1.0 + 1e-9:
            raise ValueError(f"chi diagonal exceeds unit weight: {self.chi_diag}")

    def apply(self, state: BlochState) -> BlochState:
        vec = self.ptm @ np.array([1.0, state.x, state.y, state.z])
        return BlochState(x=vec[1], y=vec[2], z=vec[3])

    def to_dict(self) -> dict:
        return {
            "ptm": [[float(v) for v in row] for row in self.ptm],
            "chi_diag": [float(v) for v in self.chi_diag],
            "converged": self.converged,
            "rwa_margin": None if math.isinf(self.rwa_margin) else self.rwa_margin,
        }


def pulse_params(spec: GateSpec) -> tuple[float, float]:
    """(Omega, tau) of the square pulse; Omega * tau == theta identically."""
    omega = 4.0 * spec.gamma * spec.n_g / spec.theta
    tau = spec.theta ** 2 / (4.0 * spec.gamma * spec.n_g)
    return omega, tau


def ideal_rotation_ptm(theta: float) -> np.ndarray:
    """Transfer matrix of the unitary rotation by theta about x."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, s, c],
        ]
    )


def choi_from_ptm(ptm: np.ndarray) -> np.ndarray:
    """Choi matrix (trace-1 normalization) of a channel given as a PTM."""
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            choi += ptm[i, j] * np.kron(PAULIS[i], PAULIS[j].T)
    choi /= 4.0
    return 0.5 * (choi + choi.conj().T)


def _lindblad_rhs(rho: np.ndarray, omega: float, gamma: float) -> np.ndarray:
    h = 0.5 * omega * SIGMA_X
    drho = -1j * (h @ rho - rho @ h)
    sps_m = SIGMA_PLUS @ SIGMA_MINUS
    drho += gamma * (
        SIGMA_MINUS @ rho @ SIGMA_PLUS - 0.5 * (sps_m @ rho + rho @ sps_m)
    )
    return drho


def _rk4_evolve(
    rho0: np.ndarray, omega: float, gamma: float, tau: float, steps: int
) -> np.ndarray:
    h = tau / steps
    rho = rho0.astype(complex)
    for _ in range(steps):
        k1 = _lindblad_rhs(rho, omega, gamma)
        k2 = _lindblad_rhs(rho + 0.5 * h * k1, omega, gamma)
        k3 = _lindblad_rhs(rho + 0.5 * h * k2, omega, gamma)
        k4 = _lindblad_rhs(rho + h * k3, omega, gamma)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho


# Linearly independent preparation states: |0>, |1>, |+>, |+i>.
_PREP_STATES = (
    np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
    np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex),
    np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex),
    np.array([[0.5, -0.5j], [0.5j, 0.5]], dtype=complex),
)


def _noisy_gate_ptm(omega: float, gamma: float, tau: float, steps: int) -> np.ndarray:
    """PTM of the raw noisy gate, assembled from four evolved preparations."""
    outs = [_rk4_evolve(rho, omega, gamma, tau, steps) for rho in _PREP_STATES]
    out_identity = outs[0] + outs[1]
    images = (
        out_identity,
        2.0 * outs[2] - out_identity,
        2.0 * outs[3] - out_identity,
        outs[0] - outs[1],
    )
    ptm = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            ptm[i, j] = 0.5 * np.trace(PAULIS[i] @ images[j]).real
    return ptm


def _default_steps(omega: float, gamma: float, tau: float) -> int:
    h_max = min(tau / 1000.0, 0.01 / omega, 0.01 / gamma)
    return max(1000, math.ceil(tau / h_max))


def extract_chi_diag(
    ptm: np.ndarray, theta: float = 0.0
) -> tuple[float, float, float, float]:
    """(chi00, p_x, p_y, p_z) from a channel's transfer-matrix diagonal.

    With theta == 0 the input is the noise map itself; otherwise it is a
    noisy rotation gate and the ideal rotation by theta is divided out first.
    """
    ptm = np.asarray(ptm, dtype=float)
    if abs(ptm[0, 0] - 1.0) > TP_TOL or np.max(np.abs(ptm[0, 1:])) > TP_TOL:
        raise ValueError("transfer matrix is not trace preserving")
    if theta != 0.0:
        ptm = ideal_rotation_ptm(-theta) @ ptm
    s = np.diag(ptm)
    chi = _CHI_COEFF @ s / 4.0  # the coefficient matrix inverts itself
    return (float(chi[0]), float(chi[1]), float(chi[2]), float(chi[3]))


def evolve_noisy_gate(
    spec: GateSpec,
    steps: int | None = None,
    check_convergence: bool = True,
) -> QubitChannel:
    """Integrate the driven-qubit master equation and return the noise map.

    The default step count obeys h <= min(tau/1000, 0.01/Omega, 0.01/gamma).
    When check_convergence is set (the default) the integration is repeated
    with halved step and the finer result is returned; a relative shift of
    the chi diagonal above CONVERGENCE_TOL raises ConvergenceError.
    """
    omega, tau = pulse_params(spec)
    if spec.omega0 is not None and spec.n_g >= RWA_FRACTION * spec.omega0 / spec.gamma:
        warnings.warn(
            f"rotating-wave approximation is marginal: n_g={spec.n_g:g} vs "
            f"omega0/gamma={spec.omega0 / spec.gamma:g}",
            stacklevel=2,
        )
    if steps is None:
        steps = _default_steps(omega, gamma=spec.gamma, tau=tau)
    if steps < 1:
        raise ValueError("steps must be >= 1")

    inverse_ideal = ideal_rotation_ptm(-spec.theta)
    ptm_coarse = inverse_ideal @ _noisy_gate_ptm(omega, spec.gamma, tau, steps)
    chi_coarse = extract_chi_diag(ptm_coarse)
    if not check_convergence:
        return QubitChannel(
            ptm=ptm_coarse,
            chi_diag=chi_coarse,
            converged=False,
            rwa_margin=spec.rwa_margin,
        )

    ptm_fine = inverse_ideal @ _noisy_gate_ptm(omega, spec.gamma, tau, 2 * steps)
    chi_fine = extract_chi_diag(ptm_fine)
    scale = max(np.max(np.abs(chi_fine)), 1e-300)
    shift = np.max(np.abs(np.subtract(chi_fine, chi_coarse))) / scale
    if shift >= CONVERGENCE_TOL:
        raise ConvergenceError(
            f"chi diagonal moved by {shift:.3e} (>= {CONVERGENCE_TOL}) under "
            f"step halving at {steps} steps"
        )
    return QubitChannel(
        ptm=ptm_fine,
        chi_diag=chi_fine,
        converged=True,
        rwa_margin=spec.rwa_margin,
    )


def asymptotic_pauli_errors(n_g: float) -> tuple[float, float, float]:
    """Leading-order (p_x, p_y, p_z) of the pi-pulse for n_g photons:
    (pi^2/16, pi^2/32, pi^2/32) / n_g.  The dominant one, p_x, is the
    physical error probability used by the error-correction analysis."""
    if n_g <= 0:
        raise ValueError(f"n_g must be > 0, got {n_g!r}")
    p_x = PI_SQ_OVER_16 / n_g
    return (p_x, 0.5 * p_x, 0.5 * p_x)
