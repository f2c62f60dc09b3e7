"""Secrecy-constrained optimal designs and technique selection.

Both techniques trade coverage against secrecy through a single scalar
(guard radius r_g, power split gamma). Under the constraint
p_sec >= epsilon the best choice of that scalar has a closed form: the
guard radius comes from inverting an incomplete gamma, the power split
is explicit. Which optimized technique covers better at a given link
distance reduces to the sign of a selection function F(d); F increases
with d and crosses zero once, at the critical distance d_star. Short
links favor artificial noise, long links favor the guard zone.

Below the density threshold lambda_threshold() plain transmission
already meets the secrecy target and both optima degenerate to the null
design (r_g = 0, gamma = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NoCrossingError, RegimeError
from .model import (
    GuardZoneDesign,
    NoiseSplitDesign,
    SystemParams,
    TechniqueMetrics,
    _power,
    density_factor,
    order,
    p_cov_an,
    p_cov_gz,
    p_sec_an,
    p_sec_gz,
    radius_from_argument,
    secrecy_scale,
)
from .specfun import (
    complete_gamma,
    inverse_upper_incomplete_gamma,
    upper_incomplete_gamma,
)

__all__ = [
    "Technique",
    "OptimalDesign",
    "SelectionVerdict",
    "CriticalDistance",
    "lambda_threshold",
    "optimal_guard_radius",
    "optimal_power_split",
    "selection_function",
    "critical_distance",
]

# bisection width on d for the critical-distance solver
_D_TOL = 1e-10
_DEFAULT_BRACKET = (1e-3, 10.0)
_MAX_EXPANSIONS = 60


class Technique(Enum):
    GUARD_ZONE = "guard-zone"
    ARTIFICIAL_NOISE = "artificial-noise"


@dataclass(frozen=True)
class OptimalDesign:
    """One technique tuned to its secrecy-constrained optimum."""

    technique: Technique
    parameter: float
    metrics: TechniqueMetrics
    constraint_active: bool


@dataclass(frozen=True)
class SelectionVerdict:
    """Outcome of comparing both optimized techniques at one distance."""

    f_value: float
    h_value: float
    g_value: float
    better: Technique
    gz_design: OptimalDesign
    an_design: OptimalDesign


@dataclass(frozen=True)
class CriticalDistance:
    """Root of the selection function, with the bracket that contained it."""

    d_star: float
    bracket: tuple[float, float]


def lambda_threshold(params: SystemParams) -> float:
    """Eavesdropper density above which plain transmission misses the
    secrecy target and an enhancement technique becomes necessary.

    The threshold is the same for both techniques; params.lambda_e is
    ignored.
    """
    a = order(params)
    return (
        params.alpha
        / (2.0 * math.pi * complete_gamma(a))
        * -math.log(params.epsilon)
        * (params.p_t / (params.sigma2_s * params.beta_e)) ** -a
    )


def optimal_guard_radius(params: SystemParams) -> OptimalDesign:
    """Largest guard radius is never wanted; this returns the smallest
    radius that still meets the secrecy target, which maximizes coverage."""
    a = order(params)
    if params.lambda_e == 0.0:
        r_star, binding = 0.0, False
    else:
        target = -math.log(params.epsilon) / secrecy_scale(params)
        if target >= complete_gamma(a):
            # plain transmission is already secret enough
            r_star, binding = 0.0, False
        else:
            x_star = inverse_upper_incomplete_gamma(a, target)
            r_star = radius_from_argument(params, x_star)
            binding = True
    design = GuardZoneDesign(r_star)
    metrics = TechniqueMetrics(
        p_cov=p_cov_gz(params, design), p_sec=p_sec_gz(params, design)
    )
    return OptimalDesign(Technique.GUARD_ZONE, r_star, metrics, binding)


def optimal_power_split(params: SystemParams) -> OptimalDesign:
    """Largest signal fraction that still meets the secrecy target."""
    if params.lambda_e == 0.0:
        unclamped = math.inf
    else:
        a = order(params)
        lift = (params.sigma2_s / params.p_t) * _power(
            params.alpha
            * -math.log(params.epsilon)
            / (2.0 * math.pi * params.lambda_e * complete_gamma(a)),
            params.alpha / 2.0,
        )
        unclamped = params.beta_e / (1.0 + params.beta_e) * (1.0 + lift)
    gamma_star = min(1.0, unclamped)
    design = NoiseSplitDesign(gamma_star)
    metrics = TechniqueMetrics(
        p_cov=p_cov_an(params, design), p_sec=p_sec_an(params, design)
    )
    return OptimalDesign(
        Technique.ARTIFICIAL_NOISE, gamma_star, metrics, unclamped < 1.0
    )


def _selection_f(params: SystemParams, g: float, d: float) -> tuple[float, float]:
    # returns (F, H) at distance d for a fixed optimal power split g
    a = order(params)
    if g >= 1.0:
        h = 0.0
    else:
        inner = (
            params.beta_t
            * params.sigma2_p
            * _power(d, params.alpha)
            / (params.lambda_e * math.pi * params.p_t)
            * (1.0 / g - 1.0)
        )
        h = (
            params.beta_e
            * params.sigma2_s
            / params.p_t
            * _power(inner, params.alpha / 2.0)
        )
    target = -math.log(params.epsilon) / secrecy_scale(params)
    return target - upper_incomplete_gamma(a, h), h


def selection_function(params: SystemParams) -> SelectionVerdict:
    """Which optimized technique covers better at params.d.

    Positive F means the guard zone wins; at a tie (F = 0, including the
    threshold density where both optima are null) artificial noise is
    reported.
    """
    lam_star = lambda_threshold(params)
    if params.lambda_e < lam_star:
        raise RegimeError(
            f"lambda_e = {params.lambda_e:g} is below the enhancement "
            f"threshold {lam_star:g}; no technique is needed"
        )
    gz = optimal_guard_radius(params)
    an = optimal_power_split(params)
    f_value, h_value = _selection_f(params, an.parameter, params.d)
    better = Technique.GUARD_ZONE if f_value > 0.0 else Technique.ARTIFICIAL_NOISE
    return SelectionVerdict(
        f_value=f_value,
        h_value=h_value,
        g_value=an.parameter,
        better=better,
        gz_design=gz,
        an_design=an,
    )


def critical_distance(
    params: SystemParams, bracket_hint: tuple[float, float] | None = None
) -> CriticalDistance:
    """Distance at which the preferred technique flips.

    Bisection on the monotone selection function, starting from
    bracket_hint (default [1e-3, 10]) and expanding geometrically until
    the sign change is contained. Exactly at the threshold density the
    selection function is numerically zero everywhere; the solver then
    reports the lower bracket edge.
    """
    lam_star = lambda_threshold(params)
    if params.lambda_e < lam_star:
        raise RegimeError(
            f"lambda_e = {params.lambda_e:g} is below the enhancement "
            f"threshold {lam_star:g}; the selection function has no root"
        )
    lo, hi = bracket_hint if bracket_hint is not None else _DEFAULT_BRACKET
    if not (0.0 < lo < hi) or not math.isfinite(hi):
        raise DomainError(f"bracket must satisfy 0 < lo < hi, got ({lo}, {hi})")

    g = optimal_power_split(params).parameter

    def f(d: float) -> float:
        return _selection_f(params, g, d)[0]

    f_lo = f(lo)
    flat_tol = 1e-14 * max(1.0, complete_gamma(order(params)))
    if abs(f_lo) <= flat_tol:
        # F is indistinguishable from zero at double precision (threshold
        # density); any distance is a root, report the lower edge
        return CriticalDistance(d_star=lo, bracket=(lo, hi))

    f_hi = f(hi)
    for _ in range(_MAX_EXPANSIONS):
        if f_lo > 0.0:
            hi, f_hi = lo, f_lo
            lo /= 10.0
            f_lo = f(lo)
        elif f_hi < 0.0:
            lo, f_lo = hi, f_hi
            hi *= 2.0
            f_hi = f(hi)
        else:
            break
    if f_lo > 0.0 or f_hi < 0.0:
        raise NoCrossingError(
            "no sign change of the selection function within "
            f"[{lo:g}, {hi:g}]: F(lo) = {f_lo:g}, F(hi) = {f_hi:g}"
        )

    bracket = (lo, hi)
    while hi - lo > _D_TOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return CriticalDistance(d_star=0.5 * (lo + hi), bracket=bracket)
