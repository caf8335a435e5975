"""Fault-tolerance scheme constants and scale-dependent physical noise laws.

Physical and logical error probabilities are carried as base-10 logarithms
(:class:`LogProb`): the logical error per gate shrinks doubly exponentially
with the concatenation level and underflows any fixed-precision float long
before the interesting regime is exhausted (log10 p can reach -10^4 and
beyond).  Conversion to linear probabilities happens only at reporting edges.

All types here are immutable values and all operations are pure functions;
they are safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

# pi^2/16 is the error probability per pi-pulse for a single driving photon.
PI_SQ_OVER_16 = math.pi ** 2 / 16.0

LOG10 = math.log(10.0)


@dataclass(frozen=True, order=True)
class LogProb:
    """Base-10 logarithm of a nonnegative quantity.

    ``-inf`` encodes an exact zero.  Values >= 0 (quantities >= 1) are legal:
    the error-bound formulas leave the meaningful-probability regime before
    the optimizer stops caring about them; saturation to probability 1 is a
    presentation concern (see :attr:`probability`).
    """

    log10_value: float

    def __post_init__(self) -> None:
        v = self.log10_value
        if math.isnan(v) or v == math.inf:
            raise ValueError(f"LogProb must be finite or -inf, got {v!r}")

    @classmethod
    def from_linear(cls, value: float) -> "LogProb":
        if value < 0:
            raise ValueError(f"cannot take log of negative value {value!r}")
        return cls(-math.inf if value == 0 else math.log10(value))

    @property
    def linear(self) -> float:
        """Plain float value; saturates to inf above the float range."""
        if self.log10_value == -math.inf:
            return 0.0
        try:
            return 10.0 ** self.log10_value
        except OverflowError:
            return math.inf

    @property
    def probability(self) -> float:
        """Linear value clamped to [0, 1], for reporting only."""
        return min(self.linear, 1.0)


def _check_count(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer count, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


@dataclass(frozen=True)
class FTScheme:
    """Overhead constants of a concatenated fault-tolerance scheme.

    Attributes:
        A: physical gates per extended rectangle (encoded gate plus the
           surrounding error-correction boxes).
        A_prime: physical gates per rectangle (encoded gate plus the
           following error-correction box).
        B: count of malignant fault pairs per extended rectangle; 1/B is the
           scale-independent threshold error probability.
        D: multiplicative growth in physical components per added
           concatenation level.
        M: clock cycles per concatenation level.

    The constants are opaque here: nothing in this package models the
    internal structure of the rectangles.
    """

    A: int
    A_prime: int
    B: int
    D: int
    M: int

    def __post_init__(self) -> None:
        for name in ("A", "A_prime", "B", "D", "M"):
            _check_count(name, getattr(self, name))

    @property
    def threshold(self) -> float:
        """Scale-independent threshold error probability, 1/B."""
        return 1.0 / self.B

    def gate_count(self, k: int) -> int:
        """Physical gates in a level-k logical gate: A * A_prime**(k-1).

        Exact combinatorial count, for reporting.  The noise-scaling models
        take their per-level growth factor separately (usually D).
        """
        if k < 0:
            raise ValueError("concatenation level must be >= 0")
        return 1 if k == 0 else self.A * self.A_prime ** (k - 1)

    def to_dict(self) -> dict:
        return {"A": self.A, "A_prime": self.A_prime, "B": self.B,
                "D": self.D, "M": self.M}


def make_scheme(A: int, A_prime: int, B: int, D: int, M: int) -> FTScheme:
    """Validate and build an FTScheme from explicit constants."""
    return FTScheme(A=A, A_prime=A_prime, B=B, D=D, M=M)


# Concatenated 7-qubit code with the standard exRec counting.
SCHEME_PRESETS: dict[str, FTScheme] = {
    "aliferis2006": FTScheme(A=575, A_prime=291, B=10_000, D=291, M=3),
}


def get_scheme(name_or_scheme: Union[str, FTScheme]) -> FTScheme:
    """Resolve a preset name (or pass through an FTScheme)."""
    if isinstance(name_or_scheme, FTScheme):
        return name_or_scheme
    try:
        return SCHEME_PRESETS[name_or_scheme]
    except KeyError:
        raise ValueError(
            f"unknown scheme preset {name_or_scheme!r}; "
            f"known: {sorted(SCHEME_PRESETS)}"
        ) from None


def _check_eta0(eta0: float) -> None:
    if not 0.0 < eta0 < 1.0:
        raise ValueError(f"eta0 must lie in (0, 1), got {eta0!r}")


@dataclass(frozen=True)
class AffineNoise:
    """Physical error probability growing affinely with the level:
    eta(k) = eta0 * (1 + c*k)."""

    eta0: float
    c: float = 0.0

    def __post_init__(self) -> None:
        _check_eta0(self.eta0)
        if self.c < 0:
            raise ValueError(f"c must be >= 0, got {self.c!r}")


@dataclass(frozen=True)
class ExponentialNoise:
    """Physical error probability growing exponentially with the level:
    eta(k) = eta0 * D**(beta*k).

    The per-level component growth D belongs to the scheme, not to the noise
    law, so one law can be evaluated under different schemes; D is supplied
    at evaluation time.
    """

    eta0: float
    beta: float

    def __post_init__(self) -> None:
        _check_eta0(self.eta0)
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta!r}")


@dataclass(frozen=True)
class TabulatedNoise:
    """Measured (or synthesized) growth profile: eta(k) = eta0 * f_values[k].

    f_values must start at 1 and be monotone non-decreasing.
    """

    eta0: float
    f_values: tuple[float, ...]

    def __post_init__(self) -> None:
        _check_eta0(self.eta0)
        f = tuple(float(v) for v in self.f_values)
        object.__setattr__(self, "f_values", f)
        if not f:
            raise ValueError("f_values must be non-empty")
        if f[0] != 1.0:
            raise ValueError(f"f_values[0] must equal 1, got {f[0]!r}")
        for a, b in zip(f, f[1:]):
            if b < a:
                raise ValueError("f_values must be monotone non-decreasing")


@dataclass(frozen=True)
class ShorPhotonNoise:
    """Error per physical pi-pulse under a total photon budget.

    An algorithm of L logical gates runs on n_tot photons in total; at level
    k every logical gate costs A**k physical gates (A is the per-level gate
    growth factor), so each physical gate receives n_tot / (L * A**k) photons
    and fails with probability eta(k) = (pi^2/16) * L * A**k / n_tot.

    eta(k) may exceed 1 for large k; such values mean "worse than useless"
    and are kept un-saturated (see LogProb).
    """

    L: int
    n_tot: float
    A: float

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L!r}")
        if not self.n_tot > 0:
            raise ValueError(f"n_tot must be > 0, got {self.n_tot!r}")
        if self.A < 1:
            raise ValueError(f"A must be >= 1, got {self.A!r}")


NoiseModel = Union[AffineNoise, ExponentialNoise, TabulatedNoise, ShorPhotonNoise]


def eta_at_level(model: NoiseModel, k: int, D: float | None = None) -> LogProb:
    """log10 of the physical error probability in a level-k computer.

    Args:
        model: the scale-dependent noise law.
        k: concatenation level, >= 0.
        D: per-level component growth factor, required by ExponentialNoise
           (it is a property of the scheme, not of the law).
    """
    if k < 0:
        raise ValueError("concatenation level must be >= 0")
    if isinstance(model, AffineNoise):
        return LogProb(math.log10(model.eta0) + math.log10(1.0 + model.c * k))
    if isinstance(model, ExponentialNoise):
        if D is None:
            raise ValueError("ExponentialNoise needs the scheme's D at evaluation")
        if D < 1:
            raise ValueError(f"D must be >= 1, got {D!r}")
        return LogProb(math.log10(model.eta0) + model.beta * k * math.log10(D))
    if isinstance(model, TabulatedNoise):
        if k >= len(model.f_values):
            raise ValueError(
                f"level {k} outside table (length {len(model.f_values)})"
            )
        return LogProb(math.log10(model.eta0) + math.log10(model.f_values[k]))
    if isinstance(model, ShorPhotonNoise):
        return LogProb(
            math.log10(PI_SQ_OVER_16)
            + math.log10(model.L)
            + k * math.log10(model.A)
            - math.log10(model.n_tot)
        )
    raise TypeError(f"unknown noise model {model!r}")


@dataclass(frozen=True)
class FitResult:
    """Noise law fitted to measured (k, eta) samples.

    residual is the root-mean-square misfit of log10 eta.
    """

    model: NoiseModel
    residual: float
    n_points: int

    def __post_init__(self) -> None:
        if self.residual < 0:
            raise ValueError("residual must be >= 0")
        if self.n_points < 2:
            raise ValueError("n_points must be >= 2")


def fit_noise_model(
    samples: Sequence[tuple[float, float]],
    variant_hint: str,
    D: float | None = None,
) -> FitResult:
    """Least-squares fit of an affine or exponential noise law.

    The affine law is fitted linearly in k on eta; the exponential law is
    fitted linearly in k on log10 eta, with the slope converted to beta via
    the supplied growth factor D.  The reported residual is RMS in log10
    space for both variants.
    """
    if len(samples) < 2:
        raise ValueError("need at least 2 samples")
    ks = np.asarray([s[0] for s in samples], dtype=float)
    etas = np.asarray([s[1] for s in samples], dtype=float)
    if np.any(etas <= 0.0) or np.any(etas >= 1.0):
        raise ValueError("all eta samples must lie in (0, 1)")
    if len(set(ks.tolist())) != len(ks):
        raise ValueError("abscissae k must be distinct")

    design = np.column_stack([np.ones_like(ks), ks])
    model: NoiseModel
    if variant_hint == "affine":
        coef, *_ = np.linalg.lstsq(design, etas, rcond=None)
        eta0, slope = float(coef[0]), float(coef[1])
        if eta0 <= 0:
            raise ValueError("affine fit gives non-positive eta0")
        c = slope / eta0
        if c < 0 and c > -1e-12:  # forgive round-off on exactly flat data
            c = 0.0
        model = AffineNoise(eta0=eta0, c=c)
        predicted_log10 = np.log10(eta0 * (1.0 + c * ks))
    elif variant_hint == "exponential":
        if D is None:
            raise ValueError("exponential fit needs the scheme's D")
        if D <= 1:
            raise ValueError(f"D must be > 1 to resolve beta, got {D!r}")
        log_etas = np.log10(etas)
        coef, *_ = np.linalg.lstsq(design, log_etas, rcond=None)
        intercept, slope = float(coef[0]), float(coef[1])
        beta = slope / math.log10(D)
        if beta < 0 and beta > -1e-12:
            beta = 0.0
        model = ExponentialNoise(eta0=10.0 ** intercept, beta=beta)
        predicted_log10 = intercept + slope * ks
    else:
        raise ValueError(f"variant_hint must be 'affine' or 'exponential', got {variant_hint!r}")

    residual = float(np.sqrt(np.mean((predicted_log10 - np.log10(etas)) ** 2)))
    return FitResult(model=model, residual=residual, n_points=len(samples))


_VARIANT_NAMES = {
    AffineNoise: "affine",
    ExponentialNoise: "exponential",
    TabulatedNoise: "tabulated",
    ShorPhotonNoise: "shor_photon",
}


def model_to_dict(model: NoiseModel) -> dict:
    """JSON-ready representation with the wire field names."""
    if isinstance(model, AffineNoise):
        return {"variant": "affine", "eta0": model.eta0, "c": model.c}
    if isinstance(model, ExponentialNoise):
        return {"variant": "exponential", "eta0": model.eta0, "beta": model.beta}
    if isinstance(model, TabulatedNoise):
        return {"variant": "tabulated", "eta0": model.eta0,
                "f_values": list(model.f_values)}
    if isinstance(model, ShorPhotonNoise):
        return {"variant": "shor_photon", "L": model.L, "n_tot": model.n_tot,
                "A": model.A}
    raise TypeError(f"unknown noise model {model!r}")


def model_from_dict(data: dict) -> NoiseModel:
    """Inverse of :func:`model_to_dict`; validates invariants on the way in."""
    try:
        variant = data["variant"]
    except KeyError:
        raise ValueError("noise model JSON needs a 'variant' field") from None
    try:
        if variant == "affine":
            return AffineNoise(eta0=data["eta0"], c=data.get("c", 0.0))
        if variant == "exponential":
            return ExponentialNoise(eta0=data["eta0"], beta=data["beta"])
        if variant == "tabulated":
            return TabulatedNoise(eta0=data["eta0"],
                                  f_values=tuple(data["f_values"]))
        if variant == "shor_photon":
            return ShorPhotonNoise(L=data["L"], n_tot=data["n_tot"], A=data["A"])
    except KeyError as exc:
        raise ValueError(f"noise model JSON missing field {exc}") from None
    raise ValueError(f"unknown noise model variant {variant!r}")
