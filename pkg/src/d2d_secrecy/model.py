"""Closed-form coverage and secrecy probabilities.

Scene: a transmitter at the origin sends to its receiver at distance d
over a Rayleigh-faded, noise-limited link with power-law path loss
(exponent alpha > 2). Eavesdroppers form a homogeneous planar Poisson
field of density lambda_e; each applies maximal-ratio reception of the
single transmission, so only the strongest eavesdropper matters.

Two enhancement techniques are modeled.

Guard zone: the transmitter stays silent whenever an eavesdropper is
detected within radius r_g. Coverage requires both an active link and
receiver SNR above the legitimate threshold; secrecy is assessed given
the link is active.

Artificial noise: a fraction gamma of the transmit power carries the
information signal and the remainder is broadcast as isotropic jamming.
The legitimate receiver is assumed to cancel the jamming component; an
eavesdropper cannot, so its effective ratio saturates at gamma/(1-gamma).

All probabilities come out as single exponentials, so each function
assembles the exponent and calls exp once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateDesignError, DomainError
from .specfun import complete_gamma, upper_incomplete_gamma

__all__ = [
    "SystemParams",
    "GuardZoneDesign",
    "NoiseSplitDesign",
    "TechniqueMetrics",
    "rate_to_threshold",
    "p_active",
    "p_cov_gz",
    "p_sec_gz",
    "p_cov_an",
    "p_sec_an",
]


def _require_positive(name: str, value: float) -> None:
    if not (value > 0.0) or not math.isfinite(value):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def _power(base: float, exponent: float) -> float:
    # float ** raises OverflowError where IEEE arithmetic would give inf;
    # the exponentials downstream handle inf correctly, so prefer it
    try:
        return base**exponent
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class SystemParams:
    """Link, noise, and threat parameters shared by every computation.

    alpha     path-loss exponent, must exceed 2 for the field integrals
              to converge
    p_t       transmit power budget
    beta_t    SNR threshold the legitimate receiver must clear
    beta_e    SNR level an eavesdropper must stay below
    epsilon   secrecy target: designs must keep the secrecy probability
              at or above this value
    sigma2_p  noise power at the legitimate receiver
    sigma2_s  noise power at the eavesdroppers
    lambda_e  eavesdropper density per unit area
    d         transmitter-receiver distance
    """

    alpha: float
    p_t: float
    beta_t: float
    beta_e: float
    epsilon: float
    sigma2_p: float
    sigma2_s: float
    lambda_e: float
    d: float

    def __post_init__(self) -> None:
        if not (self.alpha > 2.0) or not math.isfinite(self.alpha):
            raise DomainError(
                f"alpha must exceed 2 for a planar field, got {self.alpha}"
            )
        _require_positive("p_t", self.p_t)
        _require_positive("beta_t", self.beta_t)
        _require_positive("beta_e", self.beta_e)
        if not (0.0 < self.epsilon < 1.0):
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        _require_positive("sigma2_p", self.sigma2_p)
        _require_positive("sigma2_s", self.sigma2_s)
        if self.lambda_e < 0.0 or not math.isfinite(self.lambda_e):
            raise DomainError(
                f"lambda_e must be nonnegative and finite, got {self.lambda_e}"
            )
        _require_positive("d", self.d)


@dataclass(frozen=True)
class GuardZoneDesign:
    """Guard-zone technique: keep silent if an eavesdropper is within r_g."""

    r_g: float

    def __post_init__(self) -> None:
        if self.r_g < 0.0 or not math.isfinite(self.r_g):
            raise DomainError(f"r_g must be nonnegative and finite, got {self.r_g}")


@dataclass(frozen=True)
class NoiseSplitDesign:
    """Artificial-noise technique: fraction gamma of power on the signal."""

    gamma: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.gamma <= 1.0):
            raise DomainError(f"gamma must lie in [0, 1], got {self.gamma}")


@dataclass(frozen=True)
class TechniqueMetrics:
    """Joint performance of one configured technique."""

    p_cov: float
    p_sec: float


def rate_to_threshold(rate: float) -> float:
    """SNR threshold equivalent to a target rate in bits per channel use."""
    if rate < 0.0 or not math.isfinite(rate):
        raise DomainError(f"rate must be nonnegative and finite, got {rate}")
    return 2.0**rate - 1.0


def order(params: SystemParams) -> float:
    """Order 2/alpha of the incomplete gamma the field integrals produce."""
    return 2.0 / params.alpha


def density_factor(params: SystemParams) -> float:
    """Common 2*pi*lambda_e/alpha prefactor of the secrecy exponents."""
    return 2.0 * math.pi * params.lambda_e / params.alpha


def secrecy_scale(params: SystemParams) -> float:
    """Factor multiplying the incomplete gamma in the guard-zone secrecy
    exponent; shared with the optimizer, which inverts it."""
    a = order(params)
    return density_factor(params) * (params.p_t / (params.sigma2_s * params.beta_e)) ** a


def guard_argument(params: SystemParams, r_g: float) -> float:
    """Map a guard radius to the incomplete-gamma argument it induces."""
    return _power(r_g, params.alpha) * params.beta_e * params.sigma2_s / params.p_t


def radius_from_argument(params: SystemParams, x: float) -> float:
    """Inverse of guard_argument."""
    return (x * params.p_t / (params.beta_e * params.sigma2_s)) ** (1.0 / params.alpha)


def _silence_exponent(params: SystemParams, r_g: float) -> float:
    if params.lambda_e == 0.0:
        return 0.0
    return params.lambda_e * math.pi * (r_g * r_g)


def p_active(params: SystemParams, design: GuardZoneDesign) -> float:
    """Probability the guard zone is clear and the link transmits at all."""
    return math.exp(-_silence_exponent(params, design.r_g))


def p_cov_gz(params: SystemParams, design: GuardZoneDesign) -> float:
    """Coverage under a guard zone: link active and receiver SNR >= beta_t."""
    silence = _silence_exponent(params, design.r_g)
    fade = params.beta_t * params.sigma2_p * _power(params.d, params.alpha) / params.p_t
    return math.exp(-(silence + fade))


def p_sec_gz(params: SystemParams, design: GuardZoneDesign) -> float:
    """Secrecy under a guard zone, conditioned on the link being active.

    The nearest possible eavesdropper is pushed out to r_g, which turns
    the field integral into an upper incomplete gamma evaluated at the
    radius-dependent argument.
    """
    if params.lambda_e == 0.0:
        return 1.0
    a = order(params)
    scale = secrecy_scale(params)
    return math.exp(-scale * upper_incomplete_gamma(a, guard_argument(params, design.r_g)))


def p_cov_an(params: SystemParams, design: NoiseSplitDesign) -> float:
    """Coverage under artificial noise with signal fraction gamma."""
    if design.gamma == 0.0:
        raise DegenerateDesignError(
            "gamma = 0 leaves no power on the information signal"
        )
    fade = params.beta_t * params.sigma2_p * _power(params.d, params.alpha) / (
        design.gamma * params.p_t
    )
    return math.exp(-fade)


def p_sec_an(params: SystemParams, design: NoiseSplitDesign) -> float:
    """Secrecy under artificial noise.

    An eavesdropper's ratio is capped at gamma/(1-gamma) regardless of
    position, so whenever gamma <= beta_e/(1+beta_e) secrecy holds with
    certainty. Above that the unjammed part of the field matters and the
    exponent picks up a complete gamma.
    """
    if design.gamma <= params.beta_e / (1.0 + params.beta_e):
        return 1.0
    if params.lambda_e == 0.0:
        return 1.0
    effective = design.gamma - (1.0 - design.gamma) * params.beta_e
    if effective <= 0.0:
        # cancellation right at the boundary; secrecy still certain
        return 1.0
    a = order(params)
    scale = density_factor(params) * (
        params.p_t * effective / (params.sigma2_s * params.beta_e)
    ) ** a
    return math.exp(-scale * complete_gamma(a))
