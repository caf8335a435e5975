"""End-to-end photon and energy budgets for Shor's algorithm.

Combines the concatenation optimizer with the driven-gate noise model: a run
of Shor's algorithm on an R-bit key needs L ~ R^2 logical gates, each allowed
to fail with probability at most ~1/(3L); the photon budget per logical gate
fixes the physical error probability at every concatenation level, and the
optimizer picks the level that minimizes the logical error.  Inverting the
question gives the smallest photon budget that reaches the target, and from
there the energy, power and timing of the whole computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optimizer import OptResult, find_kmax
from .scheme import FTScheme, ShorPhotonNoise

HBAR = 1.054571817e-34  # J*s

RWA_MARGINAL_RATIO = 100.0

N_L_SEARCH_CAP = 1e30
# Bisection on log10(n_L) down to 1% relative precision in n_L.
_BISECTION_TOL_LOG10 = math.log10(1.01)


@dataclass(frozen=True)
class ShorProblem:
    """Problem size for Shor's algorithm: R-bit key, L logical gates
    (defaults to the discrete-Fourier-transform count R^2), target overall
    success probability P_target."""

    R: int
    L: int | None = None
    P_target: float = 2.0 / 3.0

    def __post_init__(self) -> None:
        if self.R < 2:
            raise ValueError(f"R must be >= 2, got {self.R!r}")
        if self.L is None:
            object.__setattr__(self, "L", self.R * self.R)
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L!r}")
        if not 0.5 < self.P_target < 1.0:
            raise ValueError(f"P_target must lie in (1/2, 1), got {self.P_target!r}")


@dataclass(frozen=True)
class EnergyBill:
    """Photon, energy, power and timing figures for one full run.

    Sequential execution of the logical gates is assumed for the power
    figure.  Invariants (n_g = n_L/A^k, tau_L = M^k tau_g, T_tot = L tau_L,
    E_tot = P_avg T_tot) hold to relative 1e-12 by construction.
    """

    n_L: float
    n_g: float
    k: int
    E_tot: float
    P_avg: float
    tau_g: float
    tau_L: float
    T_tot: float

    def to_dict(self) -> dict:
        return {
            "n_L": self.n_L,
            "n_g": self.n_g,
            "k": self.k,
            "E_tot_J": self.E_tot,
            "P_W": self.P_avg,
            "tau_g_s": self.tau_g,
            "tau_L_s": self.tau_L,
            "T_tot_s": self.T_tot,
        }


@dataclass(frozen=True)
class MinBudget:
    """Result of the minimal photon-budget search."""

    n_L: float
    k: int
    feasible: bool


def target_logical_error(problem: ShorProblem) -> float:
    """Largest tolerable error probability per logical gate.

    1/(3L) for the standard P_target = 2/3; otherwise the small-error
    expansion of (1 - p)^L > P_target, namely -ln(P_target)/L.
    """
    if problem.P_target == 2.0 / 3.0:
        return 1.0 / (3.0 * problem.L)
    return -math.log(problem.P_target) / problem.L


def photon_noise_model(
    problem: ShorProblem, n_L: float, scheme: FTScheme
) -> ShorPhotonNoise:
    """Photon-budget noise law for n_L photons per logical gate.

    The per-level growth factor is the scheme's component growth D: each
    added level multiplies the number of physical gates competing for the
    fixed budget by D.
    """
    if n_L <= 0:
        raise ValueError(f"n_L must be > 0, got {n_L!r}")
    return ShorPhotonNoise(L=problem.L, n_tot=n_L * problem.L, A=scheme.D)


def optimize_photon_budget(
    problem: ShorProblem, n_L: float, scheme: FTScheme, k_cap: int = 64
) -> OptResult:
    """Best concatenation level for a given photon budget per logical gate."""
    return find_kmax(scheme, photon_noise_model(problem, n_L, scheme), k_cap=k_cap)


def min_photon_budget(
    problem: ShorProblem,
    scheme: FTScheme,
    p_err: float | None = None,
    n_L_cap: float = N_L_SEARCH_CAP,
) -> MinBudget:
    """Smallest photon budget per logical gate meeting the error target.

    Bisects on log10(n_L) to 1% relative precision; the logical error is
    monotone non-increasing in the budget (more photons never hurt), which is
    spot-checked across the bracket before trusting the bisection.  Returns
    an explicit infeasible result when even n_L_cap cannot reach the target.
    """
    target = math.log10(p_err if p_err is not None else target_logical_error(problem))

    def log10_p_min(log_n: float) -> float:
        return optimize_photon_budget(
            problem, 10.0 ** log_n, scheme
        ).log10_p_min.log10_value

    def feasible(log_n: float) -> bool:
        return log10_p_min(log_n) <= target

    lo, hi = 0.0, math.log10(n_L_cap)
    if feasible(lo):
        result = optimize_photon_budget(problem, 1.0, scheme)
        return MinBudget(n_L=1.0, k=result.k_max, feasible=True)
    if not feasible(hi):
        return MinBudget(n_L=n_L_cap, k=0, feasible=False)

    # Monotonicity spot check across the bracket.
    probes = [lo + f * (hi - lo) for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
    values = [log10_p_min(p) for p in probes]
    if any(b > a + 1e-9 for a, b in zip(values, values[1:])):
        raise RuntimeError("logical error is not monotone in the photon budget")

    while hi - lo > _BISECTION_TOL_LOG10:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    n_L = 10.0 ** hi
    result = optimize_photon_budget(problem, n_L, scheme)
    return MinBudget(n_L=n_L, k=result.k_max, feasible=True)


def energy_bill(
    problem: ShorProblem,
    n_L: float,
    k: int,
    gamma: float,
    omega0: float,
    scheme: FTScheme,
) -> EnergyBill:
    """Energy, power and timing of a full run at a given budget and level.

    The photon budget per physical gate divides by the exact per-level gate
    factor A; the clock interval is the pi-pulse duration pi^2/(4 gamma n_g);
    a level-k logical gate takes M^k clock cycles.
    """
    if n_L <= 0 or gamma <= 0 or omega0 <= 0:
        raise ValueError("n_L, gamma and omega0 must be positive")
    if k < 0:
        raise ValueError("concatenation level must be >= 0")
    n_g = n_L / scheme.A ** k
    tau_g = math.pi ** 2 / (4.0 * gamma * n_g)
    tau_L = scheme.M ** k * tau_g
    t_tot = problem.L * tau_L
    e_tot = HBAR * omega0 * problem.L * n_L
    return EnergyBill(
        n_L=n_L,
        n_g=n_g,
        k=k,
        E_tot=e_tot,
        P_avg=e_tot / t_tot,
        tau_g=tau_g,
        tau_L=tau_L,
        T_tot=t_tot,
    )


def rwa_margin(
    n_L: float, k: int, gamma: float, omega0: float, scheme: FTScheme
) -> float:
    """(omega0/gamma) / n_g with n_g = n_L / A^k.

    Ratios <= RWA_MARGINAL_RATIO mean the rotating-wave design of the gates
    is marginal at this operating point.
    """
    if n_L <= 0 or gamma <= 0 or omega0 <= 0:
        raise ValueError("n_L, gamma and omega0 must be positive")
    if k < 0:
        raise ValueError("concatenation level must be >= 0")
    n_g = n_L / scheme.A ** k
    return (omega0 / gamma) / n_g


def bill_csv_header() -> str:
    return "R,n_L,k,E_tot_J,P_W,T_tot_s,tau_g_s"


def bill_to_csv_row(R: int, bill: EnergyBill) -> str:
    return (
        f"{R},{bill.n_L!r},{bill.k},{bill.E_tot!r},{bill.P_avg!r},"
        f"{bill.T_tot!r},{bill.tau_g!r}"
    )
