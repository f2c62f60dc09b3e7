"""Command-line driver for analysis, optimization, and simulation.

Subcommands:

* ``analytic``      evaluate the closed forms at one design point
* ``optimize``      density threshold and both optimal designs
* ``select``        technique selection verdict at a given link distance
* ``mc-validate``   closed forms against Monte-Carlo estimates
* ``sweep-d``       selection function across link distances
* ``sweep-lambda``  critical distance across eavesdropper densities

Output is JSON (full precision) or CSV (fixed headers, probabilities at
6 significant digits) to stdout or ``--out``. Parameters come from
flags, optionally seeded by an INI config file (``--config``); explicit
flags win. Exit codes: 0 success, 2 usage or validation error,
3 numerical failure, 4 insufficient Monte-Carlo data.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace

from .errors import (
    DomainError,
    InsufficientDataError,
    NoCrossingError,
    NumericalError,
    RegimeError,
)
from .model import (
    GuardZoneDesign,
    NoiseSplitDesign,
    SystemParams,
    p_active,
    p_cov_an,
    p_cov_gz,
    p_sec_an,
    p_sec_gz,
)
from .montecarlo import McEstimate, TrialConfig, run_an_trials, run_gz_trials
from .optimizer import (
    Technique,
    critical_distance,
    lambda_threshold,
    optimal_guard_radius,
    optimal_power_split,
    selection_function,
)

__all__ = ["RunConfig", "SweepRow", "main"]

NO_ENHANCEMENT = "no-enhancement-needed"
NO_CROSSING = "no-crossing"

# distance used internally when the caller did not supply one; commands
# that run without --d must never emit anything derived from it
_PLACEHOLDER_D = 1.0

_DEFAULTS = {
    "alpha": 4.0,
    "pt": 1.0,
    "beta_t": 2.0,
    "beta_e": 1.0,
    "epsilon": 0.9,
    "sigma2_p": 1.0,
    "sigma2_s": 1.0,
    "lambda_e": 0.1,
    "trials": 1_000_000,
    "seed": 0,
    "tail_prob": 1e-4,
    "format": "json",
    "out": "-",
}

_GRID_DEFAULTS = {
    "sweep-d": (0.1, 1.5, 0.05),
    "sweep-lambda": (0.05, 0.25, 0.025),
}

# config file layout: one section per module, keys match the flag names
_CONFIG_SECTIONS = {
    "params": {
        "alpha": float,
        "pt": float,
        "beta_t": float,
        "beta_e": float,
        "epsilon": float,
        "sigma2_p": float,
        "sigma2_s": float,
        "lambda_e": float,
        "d": float,
    },
    "design": {"r_g": float, "gamma": float},
    "mc": {
        "trials": int,
        "seed": int,
        "window_radius": float,
        "tail_prob": float,
    },
    "sweep": {
        "grid_start": float,
        "grid_stop": float,
        "grid_step": float,
        "mc": int,
    },
    "output": {"format": str, "out": str},
}

SWEEP_D_HEADER = [
    "d",
    "f_value",
    "r_g_star",
    "gamma_star",
    "p_cov_gz",
    "p_sec_gz",
    "p_cov_an",
    "p_sec_an",
    "mc_p_cov_gz",
    "mc_p_cov_gz_half_width",
    "mc_p_cov_an",
    "mc_p_cov_an_half_width",
    "verdict",
    "d_star",
]

SWEEP_LAMBDA_HEADER = [
    "lambda_e",
    "d_star",
    "f_at_d_star",
    "r_g_star",
    "gamma_star",
    "p_cov_gz",
    "p_cov_an",
    "p_sec",
    "verdict",
]

ANALYTIC_HEADER = ["technique", "p_active", "p_cov", "p_sec"]

OPTIMIZE_HEADER = [
    "lambda_threshold",
    "enhancement_needed",
    "r_g_star",
    "gz_constraint_active",
    "gz_p_cov",
    "gz_p_sec",
    "gamma_star",
    "an_constraint_active",
    "an_p_cov",
    "an_p_sec",
]

SELECT_HEADER = [
    "verdict",
    "f_value",
    "h_value",
    "g_value",
    "r_g_star",
    "gamma_star",
    "lambda_threshold",
]

MC_VALIDATE_HEADER = [
    "check",
    "analytic",
    "mc",
    "half_width",
    "n_effective",
    "pass",
    "note",
]


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved inputs for one CLI invocation."""

    params: SystemParams
    d_supplied: bool
    r_g: float | None = None
    gamma: float | None = None
    trials: int = 1_000_000
    seed: int = 0
    window_radius: float | None = None
    tail_prob: float = 1e-4
    grid: tuple[float, ...] = ()
    mc_trials: int | None = None
    output_format: str = "json"
    output_path: str = "-"


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep table."""

    variable: str
    value: float
    f_value: float | None
    r_g_star: float | None
    gamma_star: float | None
    p_cov_gz: float | None
    p_sec_gz: float | None
    p_cov_an: float | None
    p_sec_an: float | None
    mc_p_cov_gz: McEstimate | None
    mc_p_cov_an: McEstimate | None
    d_star: float | None
    verdict: str


class UsageError(Exception):
    """Bad flags or config values; maps to exit code 2."""


def _num(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _prob(x: float | None) -> str:
    return "" if x is None else format(float(x), ".6g")


def _flag(b: bool | None) -> str:
    return "" if b is None else ("true" if b else "false")


def _estimate_json(est: McEstimate | None) -> dict | None:
    if est is None:
        return None
    return {
        "mean": est.mean,
        "half_width": est.half_width,
        "n_effective": est.n_effective,
    }


def _params_json(params: SystemParams, d_supplied: bool) -> dict:
    return {
        "alpha": params.alpha,
        "p_t": params.p_t,
        "beta_t": params.beta_t,
        "beta_e": params.beta_e,
        "epsilon": params.epsilon,
        "sigma2_p": params.sigma2_p,
        "sigma2_s": params.sigma2_s,
        "lambda_e": params.lambda_e,
        "d": params.d if d_supplied else None,
    }


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _load_config(path: str) -> dict[str, object]:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise UsageError(f"config file not found: {path}")
    values: dict[str, object] = {}
    for section in parser.sections():
        if section not in _CONFIG_SECTIONS:
            raise UsageError(f"unknown config section [{section}]")
        known = _CONFIG_SECTIONS[section]
        for key, raw in parser.items(section):
            if key not in known:
                raise UsageError(f"unknown config key '{key}' in [{section}]")
            try:
                values[key] = known[key](raw)
            except ValueError as exc:
                raise UsageError(
                    f"bad value for '{key}' in [{section}]: {raw!r}"
                ) from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--config", help="INI config file; flags override it")
    params.add_argument("--alpha", type=float)
    params.add_argument("--pt", type=float, dest="pt")
    params.add_argument("--beta-t", type=float, dest="beta_t")
    params.add_argument("--beta-e", type=float, dest="beta_e")
    params.add_argument("--epsilon", type=float)
    params.add_argument("--sigma2-p", type=float, dest="sigma2_p")
    params.add_argument("--sigma2-s", type=float, dest="sigma2_s")
    params.add_argument("--lambda-e", type=float, dest="lambda_e")
    params.add_argument("--d", type=float)
    params.add_argument("--format", choices=("csv", "json"))
    params.add_argument("--out")

    design = argparse.ArgumentParser(add_help=False)
    design.add_argument("--r-g", type=float, dest="r_g")
    design.add_argument("--gamma", type=float)

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--trials", type=int)
    mc.add_argument("--seed", type=int)
    mc.add_argument("--window-radius", type=float, dest="window_radius")
    mc.add_argument("--tail-prob", type=float, dest="tail_prob")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid-start", type=float, dest="grid_start")
    grid.add_argument("--grid-stop", type=float, dest="grid_stop")
    grid.add_argument("--grid-step", type=float, dest="grid_step")

    parser = argparse.ArgumentParser(
        prog="d2d-secrecy",
        description="Secrecy-enhancement analysis for a noise-limited D2D link "
        "under a Poisson field of eavesdroppers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "analytic",
        parents=[params, design],
        help="evaluate closed forms for one design",
    )
    sub.add_parser(
        "optimize",
        parents=[params],
        help="density threshold and optimal designs",
    )
    sub.add_parser(
        "select",
        parents=[params],
        help="pick the better technique at a link distance",
    )
    sub.add_parser(
        "mc-validate",
        parents=[params, design, mc],
        help="compare closed forms against simulation",
    )
    sweep_d = sub.add_parser(
        "sweep-d",
        parents=[params, mc, grid],
        help="selection function across link distances",
    )
    sweep_d.add_argument(
        "--mc",
        type=int,
        dest="mc",
        help="add Monte-Carlo coverage columns with this many trials",
    )
    sub.add_parser(
        "sweep-lambda",
        parents=[params, grid],
        help="critical distance across eavesdropper densities",
    )
    return parser


def _resolve(args: argparse.Namespace, file_values: dict, key: str):
    flag_value = getattr(args, key, None)
    if flag_value is not None:
        return flag_value
    if key in file_values:
        return file_values[key]
    return _DEFAULTS.get(key)


def _build_grid(start: float, stop: float, step: float, variable: str) -> tuple[float, ...]:
    for name, value in (("grid-start", start), ("grid-stop", stop), ("grid-step", step)):
        if not math.isfinite(value):
            raise UsageError(f"--{name} must be finite, got {value}")
    if step <= 0.0:
        raise UsageError(f"--grid-step must be positive, got {step}")
    if stop < start:
        raise UsageError("--grid-stop must not be below --grid-start")
    if variable == "d" and start <= 0.0:
        raise UsageError(f"link distances must be positive, got grid start {start}")
    if variable == "lambda_e" and start < 0.0:
        raise UsageError(f"densities must be nonnegative, got grid start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + i * step for i in range(count))


def _make_config(args: argparse.Namespace) -> RunConfig:
    file_values = _load_config(args.config) if args.config else {}

    def get(key):
        return _resolve(args, file_values, key)

    d_value = get("d")
    d_supplied = d_value is not None
    try:
        params = SystemParams(
            alpha=get("alpha"),
            p_t=get("pt"),
            beta_t=get("beta_t"),
            beta_e=get("beta_e"),
            epsilon=get("epsilon"),
            sigma2_p=get("sigma2_p"),
            sigma2_s=get("sigma2_s"),
            lambda_e=get("lambda_e"),
            d=d_value if d_supplied else _PLACEHOLDER_D,
        )
    except DomainError as exc:
        raise UsageError(str(exc)) from exc

    command = args.command
    if command in ("analytic", "select", "mc-validate") and not d_supplied:
        raise UsageError(f"--d is required for {command}")

    r_g = get("r_g") if command in ("analytic", "mc-validate") else None
    gamma = get("gamma") if command in ("analytic", "mc-validate") else None
    if command in ("analytic", "mc-validate"):
        if (r_g is None) == (gamma is None):
            raise UsageError(
                f"{command} needs exactly one design: pass --r-g or --gamma"
            )

    grid: tuple[float, ...] = ()
    if command in _GRID_DEFAULTS:
        start_default, stop_default, step_default = _GRID_DEFAULTS[command]
        start = get("grid_start")
        stop = get("grid_stop")
        step = get("grid_step")
        grid = _build_grid(
            start if start is not None else start_default,
            stop if stop is not None else stop_default,
            step if step is not None else step_default,
            "d" if command == "sweep-d" else "lambda_e",
        )

    mc_trials = get("mc") if command == "sweep-d" else None
    if mc_trials is not None and mc_trials < 1:
        raise UsageError(f"--mc must be at least 1, got {mc_trials}")
    trials = get("trials")
    if trials is not None and trials < 1:
        raise UsageError(f"--trials must be at least 1, got {trials}")
    output_format = get("format")
    if output_format not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {output_format!r}")

    return RunConfig(
        params=params,
        d_supplied=d_supplied,
        r_g=r_g,
        gamma=gamma,
        trials=trials,
        seed=get("seed"),
        window_radius=get("window_radius"),
        tail_prob=get("tail_prob"),
        grid=grid,
        mc_trials=mc_trials,
        output_format=output_format,
        output_path=get("out"),
    )


def cmd_analytic(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    if cfg.r_g is not None:
        design = GuardZoneDesign(r_g=cfg.r_g)
        technique = Technique.GUARD_ZONE.value
        active = p_active(params, design)
        cov = p_cov_gz(params, design)
        sec = p_sec_gz(params, design)
    else:
        design = NoiseSplitDesign(gamma=cfg.gamma)
        technique = Technique.ARTIFICIAL_NOISE.value
        active = None
        cov = p_cov_an(params, design)
        sec = p_sec_an(params, design)
    report = {
        "command": "analytic",
        "technique": technique,
        "params": _params_json(params, cfg.d_supplied),
        "design": {"r_g": cfg.r_g, "gamma": cfg.gamma},
        "p_active": active,
        "p_cov": cov,
        "p_sec": sec,
    }
    row = [technique, _prob(active), _prob(cov), _prob(sec)]
    return report, [row], 0


def cmd_optimize(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    threshold = lambda_threshold(params)
    gz = optimal_guard_radius(params)
    an = optimal_power_split(params)
    gz_cov = gz.metrics.p_cov if cfg.d_supplied else None
    an_cov = an.metrics.p_cov if cfg.d_supplied else None
    report = {
        "command": "optimize",
        "params": _params_json(params, cfg.d_supplied),
        "lambda_threshold": threshold,
        "enhancement_needed": params.lambda_e >= threshold,
        "guard_zone": {
            "r_g_star": gz.parameter,
            "constraint_active": gz.constraint_active,
            "p_cov": gz_cov,
            "p_sec": gz.metrics.p_sec,
        },
        "artificial_noise": {
            "gamma_star": an.parameter,
            "constraint_active": an.constraint_active,
            "p_cov": an_cov,
            "p_sec": an.metrics.p_sec,
        },
    }
    row = [
        _num(threshold),
        _flag(params.lambda_e >= threshold),
        _num(gz.parameter),
        _flag(gz.constraint_active),
        _prob(gz_cov),
        _prob(gz.metrics.p_sec),
        _num(an.parameter),
        _flag(an.constraint_active),
        _prob(an_cov),
        _prob(an.metrics.p_sec),
    ]
    return report, [row], 0


def cmd_select(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    threshold = lambda_threshold(params)
    try:
        verdict = selection_function(params)
    except RegimeError:
        report = {
            "command": "select",
            "params": _params_json(params, cfg.d_supplied),
            "verdict": NO_ENHANCEMENT,
            "f_value": None,
            "h_value": None,
            "g_value": None,
            "r_g_star": 0.0,
            "gamma_star": 1.0,
            "lambda_threshold": threshold,
        }
        row = [NO_ENHANCEMENT, "", "", "", _num(0.0), _num(1.0), _num(threshold)]
        print(NO_ENHANCEMENT, file=sys.stderr)
        return report, [row], 0
    token = verdict.better.value
    report = {
        "command": "select",
        "params": _params_json(params, cfg.d_supplied),
        "verdict": token,
        "f_value": verdict.f_value,
        "h_value": verdict.h_value,
        "g_value": verdict.g_value,
        "r_g_star": verdict.gz_design.parameter,
        "gamma_star": verdict.an_design.parameter,
        "lambda_threshold": threshold,
    }
    row = [
        token,
        _num(verdict.f_value),
        _num(verdict.h_value),
        _num(verdict.g_value),
        _num(verdict.gz_design.parameter),
        _num(verdict.an_design.parameter),
        _num(threshold),
    ]
    print(token, file=sys.stderr)
    return report, [row], 0


def _check_entry(analytic: float, estimate: McEstimate | None, note: str | None = None) -> dict:
    if estimate is None:
        return {
            "analytic": analytic,
            "mc": None,
            "half_width": None,
            "n_effective": 0,
            "pass": None,
            "note": note,
        }
    return {
        "analytic": analytic,
        "mc": estimate.mean,
        "half_width": estimate.half_width,
        "n_effective": estimate.n_effective,
        "pass": abs(analytic - estimate.mean) <= 3.0 * estimate.half_width,
        "note": note,
    }


def _check_row(name: str, entry: dict) -> list[str]:
    return [
        name,
        _prob(entry["analytic"]),
        _prob(entry["mc"]),
        _prob(entry["half_width"]),
        "" if entry["mc"] is None else str(entry["n_effective"]),
        _flag(entry["pass"]),
        entry["note"] or "",
    ]


def cmd_mc_validate(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    trial_cfg = TrialConfig(
        n_trials=cfg.trials,
        seed=cfg.seed,
        window_radius=cfg.window_radius,
        tail_prob=cfg.tail_prob,
    )
    exit_code = 0
    if cfg.r_g is not None:
        design = GuardZoneDesign(r_g=cfg.r_g)
        technique = Technique.GUARD_ZONE.value
        analytic = {
            "p_active": p_active(params, design),
            "p_cov": p_cov_gz(params, design),
            "p_sec": p_sec_gz(params, design),
        }
        try:
            result = run_gz_trials(params, design, trial_cfg)
            checks = {
                "p_active": _check_entry(analytic["p_active"], result.p_active),
                "p_cov": _check_entry(analytic["p_cov"], result.p_cov),
                "p_sec": _check_entry(analytic["p_sec"], result.p_sec),
            }
        except InsufficientDataError as exc:
            partial = getattr(exc, "partial", {})
            checks = {
                "p_active": _check_entry(
                    analytic["p_active"], partial.get("p_active")
                ),
                "p_cov": _check_entry(analytic["p_cov"], partial.get("p_cov")),
                "p_sec": _check_entry(analytic["p_sec"], None, "no-active-trials"),
            }
            exit_code = 4
    else:
        design = NoiseSplitDesign(gamma=cfg.gamma)
        technique = Technique.ARTIFICIAL_NOISE.value
        analytic = {
            "p_cov": p_cov_an(params, design),
            "p_sec": p_sec_an(params, design),
        }
        result = run_an_trials(params, design, trial_cfg)
        checks = {
            "p_cov": _check_entry(analytic["p_cov"], result.p_cov),
            "p_sec": _check_entry(analytic["p_sec"], result.p_sec),
        }
    passes = [entry["pass"] for entry in checks.values()]
    report = {
        "command": "mc-validate",
        "technique": technique,
        "params": _params_json(params, cfg.d_supplied),
        "design": {"r_g": cfg.r_g, "gamma": cfg.gamma},
        "trials": cfg.trials,
        "seed": cfg.seed,
        "checks": checks,
        "all_pass": all(p is True for p in passes) if passes else False,
    }
    rows = [_check_row(name, entry) for name, entry in checks.items()]
    return report, rows, exit_code


def _sweep_d_row(
    params: SystemParams,
    d_value: float,
    threshold: float,
    d_star: float | None,
    cfg: RunConfig,
) -> SweepRow:
    point = replace(params, d=d_value)
    gz = optimal_guard_radius(point)
    an = optimal_power_split(point)
    if point.lambda_e < threshold:
        f_value = None
        verdict = NO_ENHANCEMENT
    else:
        selection = selection_function(point)
        f_value = selection.f_value
        verdict = selection.better.value
    mc_gz = mc_an = None
    if cfg.mc_trials is not None:
        trial_cfg = TrialConfig(
            n_trials=cfg.mc_trials,
            seed=cfg.seed,
            window_radius=cfg.window_radius,
            tail_prob=cfg.tail_prob,
        )
        mc_gz = run_gz_trials(
            point, GuardZoneDesign(r_g=gz.parameter), trial_cfg
        ).p_cov
        mc_an = run_an_trials(
            point, NoiseSplitDesign(gamma=an.parameter), trial_cfg
        ).p_cov
    return SweepRow(
        variable="d",
        value=d_value,
        f_value=f_value,
        r_g_star=gz.parameter,
        gamma_star=an.parameter,
        p_cov_gz=gz.metrics.p_cov,
        p_sec_gz=gz.metrics.p_sec,
        p_cov_an=an.metrics.p_cov,
        p_sec_an=an.metrics.p_sec,
        mc_p_cov_gz=mc_gz,
        mc_p_cov_an=mc_an,
        d_star=d_star,
        verdict=verdict,
    )


def _sweep_d_csv_row(row: SweepRow) -> list[str]:
    return [
        _num(row.value),
        _num(row.f_value),
        _num(row.r_g_star),
        _num(row.gamma_star),
        _prob(row.p_cov_gz),
        _prob(row.p_sec_gz),
        _prob(row.p_cov_an),
        _prob(row.p_sec_an),
        _prob(None if row.mc_p_cov_gz is None else row.mc_p_cov_gz.mean),
        _prob(None if row.mc_p_cov_gz is None else row.mc_p_cov_gz.half_width),
        _prob(None if row.mc_p_cov_an is None else row.mc_p_cov_an.mean),
        _prob(None if row.mc_p_cov_an is None else row.mc_p_cov_an.half_width),
        row.verdict,
        _num(row.d_star),
    ]


def cmd_sweep_d(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    threshold = lambda_threshold(params)
    d_star = None
    if params.lambda_e >= threshold:
        try:
            d_star = critical_distance(params).d_star
        except NoCrossingError:
            d_star = None
    rows = [
        _sweep_d_row(params, d_value, threshold, d_star, cfg)
        for d_value in cfg.grid
    ]
    report = {
        "command": "sweep-d",
        "params": _params_json(params, cfg.d_supplied),
        "lambda_threshold": threshold,
        "d_star": d_star,
        "mc_trials": cfg.mc_trials,
        "seed": cfg.seed if cfg.mc_trials is not None else None,
        "rows": [
            {
                "d": row.value,
                "f_value": row.f_value,
                "r_g_star": row.r_g_star,
                "gamma_star": row.gamma_star,
                "p_cov_gz": row.p_cov_gz,
                "p_sec_gz": row.p_sec_gz,
                "p_cov_an": row.p_cov_an,
                "p_sec_an": row.p_sec_an,
                "mc_p_cov_gz": _estimate_json(row.mc_p_cov_gz),
                "mc_p_cov_an": _estimate_json(row.mc_p_cov_an),
                "verdict": row.verdict,
            }
            for row in rows
        ],
    }
    return report, [_sweep_d_csv_row(row) for row in rows], 0


def _sweep_lambda_row(params: SystemParams, lam: float, threshold: float) -> SweepRow:
    point = replace(params, lambda_e=lam)
    gz = optimal_guard_radius(point)
    an = optimal_power_split(point)
    if lam < threshold:
        return SweepRow(
            variable="lambda_e",
            value=lam,
            f_value=None,
            r_g_star=gz.parameter,
            gamma_star=an.parameter,
            p_cov_gz=None,
            p_sec_gz=gz.metrics.p_sec,
            p_cov_an=None,
            p_sec_an=an.metrics.p_sec,
            mc_p_cov_gz=None,
            mc_p_cov_an=None,
            d_star=None,
            verdict=NO_ENHANCEMENT,
        )
    try:
        d_star = critical_distance(point).d_star
    except NoCrossingError:
        return SweepRow(
            variable="lambda_e",
            value=lam,
            f_value=None,
            r_g_star=gz.parameter,
            gamma_star=an.parameter,
            p_cov_gz=None,
            p_sec_gz=gz.metrics.p_sec,
            p_cov_an=None,
            p_sec_an=an.metrics.p_sec,
            mc_p_cov_gz=None,
            mc_p_cov_an=None,
            d_star=None,
            verdict=NO_CROSSING,
        )
    at_star = replace(point, d=d_star)
    selection = selection_function(at_star)
    return SweepRow(
        variable="lambda_e",
        value=lam,
        f_value=selection.f_value,
        r_g_star=selection.gz_design.parameter,
        gamma_star=selection.an_design.parameter,
        p_cov_gz=selection.gz_design.metrics.p_cov,
        p_sec_gz=selection.gz_design.metrics.p_sec,
        p_cov_an=selection.an_design.metrics.p_cov,
        p_sec_an=selection.an_design.metrics.p_sec,
        mc_p_cov_gz=None,
        mc_p_cov_an=None,
        d_star=d_star,
        verdict="ok",
    )


def cmd_sweep_lambda(cfg: RunConfig) -> tuple[dict, list[list[str]], int]:
    params = cfg.params
    threshold = lambda_threshold(params)
    rows = [_sweep_lambda_row(params, lam, threshold) for lam in cfg.grid]
    solved = [row.d_star for row in rows if row.d_star is not None]
    monotone = all(a <= b for a, b in zip(solved, solved[1:]))
    report = {
        "command": "sweep-lambda",
        "params": _params_json(params, cfg.d_supplied),
        "lambda_threshold": threshold,
        "monotone_nondecreasing": monotone,
        "rows": [
            {
                "lambda_e": row.value,
                "d_star": row.d_star,
                "f_at_d_star": row.f_value,
                "r_g_star": row.r_g_star,
                "gamma_star": row.gamma_star,
                "p_cov_gz": row.p_cov_gz,
                "p_cov_an": row.p_cov_an,
                "p_sec": row.p_sec_gz,
                "verdict": row.verdict,
            }
            for row in rows
        ],
    }
    csv_rows = [
        [
            _num(row.value),
            _num(row.d_star),
            _num(row.f_value),
            _num(row.r_g_star),
            _num(row.gamma_star),
            _prob(row.p_cov_gz),
            _prob(row.p_cov_an),
            _prob(row.p_sec_gz),
            row.verdict,
        ]
        for row in rows
    ]
    exit_code = 0
    if not monotone:
        print(
            "error: critical-distance curve is not nondecreasing", file=sys.stderr
        )
        exit_code = 3
    return report, csv_rows, exit_code


_COMMANDS = {
    "analytic": (cmd_analytic, ANALYTIC_HEADER),
    "optimize": (cmd_optimize, OPTIMIZE_HEADER),
    "select": (cmd_select, SELECT_HEADER),
    "mc-validate": (cmd_mc_validate, MC_VALIDATE_HEADER),
    "sweep-d": (cmd_sweep_d, SWEEP_D_HEADER),
    "sweep-lambda": (cmd_sweep_lambda, SWEEP_LAMBDA_HEADER),
}


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _make_config(args)
        command, header = _COMMANDS[args.command]
        report, csv_rows, exit_code = command(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if cfg.output_format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = _csv_text(header, csv_rows)
    _emit(text, cfg.output_path)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
