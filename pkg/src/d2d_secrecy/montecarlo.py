"""Monte-Carlo validation engine for the closed-form probabilities.

Each trial realizes one snapshot of the scene: a Poisson number of
eavesdroppers dropped uniformly on a finite disk, independent unit-mean
exponential power gains per eavesdropper, and a fresh legitimate-channel
gain. Indicator outcomes (active, covered, secure) aggregate into
binomial estimates with 95% confidence half-widths.

Randomness is counter-based so that results never depend on execution
order: every batch of trials owns Philox generators keyed on
(seed, stream, batch_index), with separate streams for point counts,
point attributes, the legitimate channel, and resampling. A trial's
draws are a pure function of (seed, trial_index) and the fixed internal
batch size, which is what makes sample_field reproduce exactly the field
any run_*_trials call used, and makes runs of different lengths agree on
their common prefix of trials.

The infinite plane is truncated to a disk: auto_window_radius picks the
smallest radius whose neglected outer region shifts any secrecy estimate
by less than tail_prob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import beta as _beta_dist

from .errors import (
    DomainError,
    ExcludedRegionError,
    InsufficientDataError,
    NumericalError,
)
from .model import (
    GuardZoneDesign,
    NoiseSplitDesign,
    SystemParams,
    order,
    radius_from_argument,
    secrecy_scale,
)
from .specfun import complete_gamma, inverse_upper_incomplete_gamma

__all__ = [
    "TrialConfig",
    "EavesdropperField",
    "TrialOutcome",
    "McEstimate",
    "GzTrialEstimates",
    "AnTrialEstimates",
    "auto_window_radius",
    "sample_field",
    "strongest_received_power",
    "run_gz_trials",
    "run_an_trials",
    "gz_trial_outcome",
    "an_trial_outcome",
]

_TRIALS_PER_BATCH = 1 << 16
# stream ids for the counter-based generators
_S_COUNTS, _S_POINTS, _S_LINK, _S_RESAMPLE = range(4)
# points closer to the transmitter than this are resampled; the path-loss
# law diverges at the origin and the event has probability ~0
_MIN_POINT_DISTANCE = 1e-9
# window used when the field is empty anyway
_EMPTY_FIELD_RADIUS = 1.0


@dataclass(frozen=True)
class TrialConfig:
    """How many trials to run and how to randomize/truncate them.

    window_radius = None asks for the auto rule (see auto_window_radius
    with this tail_prob).
    """

    n_trials: int
    seed: int
    window_radius: float | None = None
    tail_prob: float = 1e-4

    def __post_init__(self) -> None:
        if self.n_trials < 1:
            raise DomainError(f"n_trials must be at least 1, got {self.n_trials}")
        if not (0 <= self.seed < 2**64):
            raise DomainError(f"seed must be an unsigned 64-bit value, got {self.seed}")
        if self.window_radius is not None and not (
            self.window_radius > 0.0 and math.isfinite(self.window_radius)
        ):
            raise DomainError(
                f"window_radius must be positive and finite, got {self.window_radius}"
            )
        if not (0.0 < self.tail_prob < 1.0):
            raise DomainError(f"tail_prob must lie in (0, 1), got {self.tail_prob}")


@dataclass(frozen=True)
class EavesdropperField:
    """One realized snapshot: planar positions and per-point power gains."""

    points: np.ndarray  # shape (n, 2)
    fading: np.ndarray  # shape (n,)


@dataclass(frozen=True)
class TrialOutcome:
    """Indicator-level view of a single trial.

    secure is None on inactive guard-zone trials: secrecy is only
    assessed given a transmission happened.
    """

    active: bool
    snr_p: float
    snr_s: float
    covered: bool
    secure: bool | None


@dataclass(frozen=True)
class McEstimate:
    """Binomial estimate with a 95% confidence half-width."""

    mean: float
    half_width: float
    n_effective: int


@dataclass(frozen=True)
class GzTrialEstimates:
    """Guard-zone run summary.

    p_sec conditions on active trials per the model's definition;
    p_sec_unconditioned averages the same indicator over all trials and
    exists as the negative control - it matches the r_g = 0 closed form,
    not the guard-zone one.
    """

    p_active: McEstimate
    p_cov: McEstimate
    p_sec: McEstimate
    p_sec_unconditioned: McEstimate


@dataclass(frozen=True)
class AnTrialEstimates:
    """Artificial-noise run summary (the link is always active)."""

    p_cov: McEstimate
    p_sec: McEstimate


def auto_window_radius(params: SystemParams, tail_prob: float = 1e-4) -> float:
    """Smallest simulation-disk radius whose neglected outer region biases
    secrecy estimates by less than tail_prob.

    Inverts the closed-form secrecy exponent: the contribution of
    eavesdroppers beyond R is the incomplete-gamma tail at R. Returns 0
    when even the full exponent stays below tail_prob, and a fixed small
    radius when the field is empty.
    """
    if not (0.0 < tail_prob < 1.0):
        raise DomainError(f"tail_prob must lie in (0, 1), got {tail_prob}")
    if params.lambda_e == 0.0:
        return _EMPTY_FIELD_RADIUS
    a = order(params)
    target = tail_prob / secrecy_scale(params)
    if target >= complete_gamma(a):
        return 0.0
    # shade the target slightly so the forward bound holds strictly after
    # the inverse solver's residual tolerance
    x = inverse_upper_incomplete_gamma(a, target * (1.0 - 1e-9))
    return radius_from_argument(params, x)


def _stream(seed: int, stream: int, batch: int) -> np.random.Generator:
    key = np.random.SeedSequence(entropy=seed, spawn_key=(stream, batch))
    return np.random.Generator(np.random.Philox(key))


def _batch_points(
    params: SystemParams, radius: float, seed: int, batch: int
) -> tuple[np.ndarray, np.ndarray]:
    """Counts and raw point attributes for one full batch of trials.

    Returns (counts, attrs): counts has _TRIALS_PER_BATCH entries; attrs
    has one row per point holding the three uniforms (radius, angle,
    fading). Points landing inside the excluded origin region are
    resampled row-by-row.
    """
    area_mean = params.lambda_e * math.pi * radius * radius
    if area_mean * _TRIALS_PER_BATCH > 5e8:
        raise NumericalError(
            "simulation window is too large for the point density",
            radius=radius,
            mean_points_per_trial=area_mean,
        )
    counts = _stream(seed, _S_COUNTS, batch).poisson(
        area_mean, size=_TRIALS_PER_BATCH
    )
    total = int(counts.sum())
    attrs = _stream(seed, _S_POINTS, batch).random((total, 3))
    if total and radius > 0.0:
        resampler = None
        for _ in range(100):
            bad = radius * np.sqrt(attrs[:, 0]) < _MIN_POINT_DISTANCE
            n_bad = int(bad.sum())
            if n_bad == 0:
                break
            if resampler is None:
                resampler = _stream(seed, _S_RESAMPLE, batch)
            attrs[bad] = resampler.random((n_bad, 3))
        else:
            raise NumericalError(
                "could not sample points outside the excluded origin region",
                radius=radius,
            )
    return counts, attrs


def _link_gains(seed: int, batch: int) -> np.ndarray:
    u = _stream(seed, _S_LINK, batch).random(_TRIALS_PER_BATCH)
    return -np.log1p(-u)


def sample_field(
    params: SystemParams, radius: float, trial_index: int, seed: int
) -> EavesdropperField:
    """The eavesdropper snapshot a given trial sees.

    Bit-identical to the field used by run_gz_trials / run_an_trials for
    the same (seed, trial_index) and radius.
    """
    if not (radius > 0.0) or not math.isfinite(radius):
        raise DomainError(f"radius must be positive and finite, got {radius}")
    if trial_index < 0:
        raise DomainError(f"trial_index must be nonnegative, got {trial_index}")
    batch, pos = divmod(trial_index, _TRIALS_PER_BATCH)
    counts, attrs = _batch_points(params, radius, seed, batch)
    start = int(counts[:pos].sum())
    rows = attrs[start : start + int(counts[pos])]
    radii = radius * np.sqrt(rows[:, 0])
    angles = 2.0 * math.pi * rows[:, 1]
    points = np.column_stack((radii * np.cos(angles), radii * np.sin(angles)))
    fading = -np.log1p(-rows[:, 2])
    return EavesdropperField(points=points, fading=fading)


def strongest_received_power(field: EavesdropperField, params: SystemParams) -> float:
    """Largest fading-weighted path gain over the field, max g * r^-alpha.

    This is the quantity the strongest eavesdropper receives per unit
    transmit power; 0 for an empty field.
    """
    if len(field.fading) == 0:
        return 0.0
    distances = np.hypot(field.points[:, 0], field.points[:, 1])
    if np.any(distances < _MIN_POINT_DISTANCE):
        raise ExcludedRegionError(
            "an eavesdropper coincides with the transmitter; the path-loss "
            "model is undefined there"
        )
    return float(np.max(field.fading * distances**-params.alpha))


def _binomial_estimate(successes: int, n: int) -> McEstimate:
    if n == 0:
        raise InsufficientDataError("no trials entered the estimate")
    mean = successes / n
    if min(successes, n - successes) < 10:
        # Clopper-Pearson: exact coverage where the normal approximation
        # breaks down (the spec point is p*n < 10; applying it to both
        # tails is strictly safer)
        lower = 0.0 if successes == 0 else float(
            _beta_dist.ppf(0.025, successes, n - successes + 1)
        )
        upper = 1.0 if successes == n else float(
            _beta_dist.ppf(0.975, successes + 1, n - successes)
        )
        half_width = max(upper - mean, mean - lower)
    else:
        half_width = 1.96 * math.sqrt(mean * (1.0 - mean) / n)
    return McEstimate(mean=mean, half_width=half_width, n_effective=n)


def _gz_window(params: SystemParams, design: GuardZoneDesign, cfg: TrialConfig) -> float:
    if cfg.window_radius is not None:
        if cfg.window_radius <= design.r_g:
            raise DomainError(
                f"window_radius {cfg.window_radius} must exceed the guard "
                f"radius {design.r_g}"
            )
        return cfg.window_radius
    # the guard zone must be fully visible for the active test; beyond
    # r_g the auto rule already bounds the neglected secrecy mass
    return max(auto_window_radius(params, cfg.tail_prob), design.r_g)


def _batch_reductions(
    params: SystemParams, radius: float, seed: int, batch: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-trial strongest path gain, nearest point distance, and h."""
    counts, attrs = _batch_points(params, radius, seed, batch)
    radii = radius * np.sqrt(attrs[:, 0])
    gains = -np.log1p(-attrs[:, 2])
    index = np.repeat(np.arange(_TRIALS_PER_BATCH), counts)
    strongest = np.zeros(_TRIALS_PER_BATCH)
    np.maximum.at(strongest, index, gains * radii**-params.alpha)
    nearest = np.full(_TRIALS_PER_BATCH, np.inf)
    np.minimum.at(nearest, index, radii)
    return strongest, nearest, _link_gains(seed, batch)


def run_gz_trials(
    params: SystemParams, design: GuardZoneDesign, cfg: TrialConfig
) -> GzTrialEstimates:
    """Simulate the guard-zone technique.

    Raises InsufficientDataError when no trial was active (the
    conditional secrecy estimate does not exist); the exception carries
    the unconditional estimates as .partial.
    """
    radius = _gz_window(params, design, cfg)
    n = cfg.n_trials
    k_active = k_cov = k_sec_active = k_sec_all = 0
    for batch in range((n + _TRIALS_PER_BATCH - 1) // _TRIALS_PER_BATCH):
        strongest, nearest, h = _batch_reductions(params, radius, cfg.seed, batch)
        m = min(n - batch * _TRIALS_PER_BATCH, _TRIALS_PER_BATCH)
        strongest, nearest, h = strongest[:m], nearest[:m], h[:m]
        active = nearest >= design.r_g
        snr_p = params.p_t * h * params.d**-params.alpha / params.sigma2_p
        covered = active & (snr_p >= params.beta_t)
        secure = params.p_t * strongest / params.sigma2_s <= params.beta_e
        k_active += int(active.sum())
        k_cov += int(covered.sum())
        k_sec_active += int((active & secure).sum())
        k_sec_all += int(secure.sum())
    p_active_est = _binomial_estimate(k_active, n)
    p_cov_est = _binomial_estimate(k_cov, n)
    p_sec_all = _binomial_estimate(k_sec_all, n)
    if k_active == 0:
        error = InsufficientDataError(
            "no active trials; the conditional secrecy probability is undefined"
        )
        error.partial = {
            "p_active": p_active_est,
            "p_cov": p_cov_est,
            "p_sec_unconditioned": p_sec_all,
        }
        raise error
    return GzTrialEstimates(
        p_active=p_active_est,
        p_cov=p_cov_est,
        p_sec=_binomial_estimate(k_sec_active, k_active),
        p_sec_unconditioned=p_sec_all,
    )


def run_an_trials(
    params: SystemParams, design: NoiseSplitDesign, cfg: TrialConfig
) -> AnTrialEstimates:
    """Simulate the artificial-noise technique (always active)."""
    if design.gamma == 0.0:
        raise DomainError("gamma = 0 leaves no power on the information signal")
    radius = (
        cfg.window_radius
        if cfg.window_radius is not None
        else auto_window_radius(params, cfg.tail_prob)
    )
    n = cfg.n_trials
    k_cov = k_sec = 0
    for batch in range((n + _TRIALS_PER_BATCH - 1) // _TRIALS_PER_BATCH):
        strongest, _, h = _batch_reductions(params, radius, cfg.seed, batch)
        m = min(n - batch * _TRIALS_PER_BATCH, _TRIALS_PER_BATCH)
        strongest, h = strongest[:m], h[:m]
        snr_p = (
            design.gamma * params.p_t * h * params.d**-params.alpha / params.sigma2_p
        )
        received = params.p_t * strongest
        snr_s = design.gamma * received / ((1.0 - design.gamma) * received + params.sigma2_s)
        k_cov += int((snr_p >= params.beta_t).sum())
        k_sec += int((snr_s <= params.beta_e).sum())
    return AnTrialEstimates(
        p_cov=_binomial_estimate(k_cov, n),
        p_sec=_binomial_estimate(k_sec, n),
    )


def _trial_arrays(
    params: SystemParams, radius: float, seed: int, trial_index: int
) -> tuple[np.ndarray, np.ndarray, float]:
    batch, pos = divmod(trial_index, _TRIALS_PER_BATCH)
    counts, attrs = _batch_points(params, radius, seed, batch)
    start = int(counts[:pos].sum())
    rows = attrs[start : start + int(counts[pos])]
    radii = radius * np.sqrt(rows[:, 0])
    gains = -np.log1p(-rows[:, 2])
    h = float(_link_gains(seed, batch)[pos])
    return radii, gains, h


def gz_trial_outcome(
    params: SystemParams,
    design: GuardZoneDesign,
    cfg: TrialConfig,
    trial_index: int,
) -> TrialOutcome:
    """Indicator view of one guard-zone trial, bit-consistent with the
    aggregates from run_gz_trials."""
    radius = _gz_window(params, design, cfg)
    radii, gains, h = _trial_arrays(params, radius, cfg.seed, trial_index)
    strongest = float(np.max(gains * radii**-params.alpha)) if len(radii) else 0.0
    active = bool(np.all(radii >= design.r_g))
    snr_p = params.p_t * h * params.d**-params.alpha / params.sigma2_p
    snr_s = params.p_t * strongest / params.sigma2_s
    covered = active and snr_p >= params.beta_t
    secure = (snr_s <= params.beta_e) if active else None
    return TrialOutcome(
        active=active, snr_p=snr_p, snr_s=snr_s, covered=covered, secure=secure
    )


def an_trial_outcome(
    params: SystemParams,
    design: NoiseSplitDesign,
    cfg: TrialConfig,
    trial_index: int,
) -> TrialOutcome:
    """Indicator view of one artificial-noise trial."""
    if design.gamma == 0.0:
        raise DomainError("gamma = 0 leaves no power on the information signal")
    radius = (
        cfg.window_radius
        if cfg.window_radius is not None
        else auto_window_radius(params, cfg.tail_prob)
    )
    radii, gains, h = _trial_arrays(params, radius, cfg.seed, trial_index)
    strongest = float(np.max(gains * radii**-params.alpha)) if len(radii) else 0.0
    snr_p = design.gamma * params.p_t * h * params.d**-params.alpha / params.sigma2_p
    received = params.p_t * strongest
    snr_s = design.gamma * received / ((1.0 - design.gamma) * received + params.sigma2_s)
    return TrialOutcome(
        active=True,
        snr_p=snr_p,
        snr_s=snr_s,
        covered=snr_p >= params.beta_t,
        secure=snr_s <= params.beta_e,
    )
