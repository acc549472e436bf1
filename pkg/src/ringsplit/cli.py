"""Command-line driver: parameter sweeps, tables, CSV/JSON emission.

Subcommands: ``cost``, ``coeffs``, ``energy``, ``evolve``, ``parseval``.
Output is deterministic: floats are printed with 17 significant digits and a
'.' decimal point, rows are ordered by sweep index regardless of worker
completion order, so identical configurations give byte-identical files.
Configuration precedence is flags > config file (JSON, path from --config or
the RINGSPLIT_CONFIG environment variable) > built-in defaults.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .discrimination import BarrierModel, post_insertion_cost
from .evolution import evolve, revival_period, sample_density
from .expansion import (DELTA_E_VARIANTS, delta_energy, expand,
                        oracle_coefficient, sign_discrepancies)
from .quadrature import ConvergenceError
from .ring import reference_state, ring_overlap, shifted_state

ENV_CONFIG = "RINGSPLIT_CONFIG"

VARIANT_CHOICES = DELTA_E_VARIANTS + ("both",)
FORMAT_CHOICES = ("csv", "json")
CANDIDATE_CHOICES = ("reference", "shifted")


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters for one invocation (after flag/config/default merge)."""

    alphas: tuple[float, ...]
    n_truncs: tuple[int, ...]
    epsilon: float
    variant: str
    fmt: str
    out: str | None
    jobs: int

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise ValueError("alpha sweep must contain at least one point")
        if len(self.n_truncs) < 1 or any(n < 1 for n in self.n_truncs):
            raise ValueError("truncation values must be positive")
        if self.variant not in VARIANT_CHOICES:
            raise ValueError(f"variant must be one of {VARIANT_CHOICES}")
        if self.fmt not in FORMAT_CHOICES:
            raise ValueError(f"format must be one of {FORMAT_CHOICES}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        BarrierModel(self.epsilon)

    @property
    def n_trunc(self) -> int:
        if len(self.n_truncs) != 1:
            raise ValueError("this command takes exactly one --n-trunc value")
        return self.n_truncs[0]


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(header, rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_value(v) for v in row])


def _write_json(header, rows, stream) -> None:
    def native(v):
        if isinstance(v, (np.integer,)):
            return int(v)
        if isinstance(v, (np.floating,)):
            return float(v)
        return v

    records = [{key: native(v) for key, v in zip(header, row)} for row in rows]
    json.dump(records, stream, indent=2)
    stream.write("\n")


def _emit(header, rows, cfg: RunConfig) -> None:
    writer = _write_csv if cfg.fmt == "csv" else _write_json
    if cfg.out is None:
        writer(header, rows, sys.stdout)
    else:
        with open(cfg.out, "w", newline="") as fh:
            writer(header, rows, fh)


def _parse_sweep(raw: str) -> tuple[float, ...]:
    try:
        start, stop, count = raw.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise ValueError(
            f"--alpha-sweep expects START:STOP:COUNT, got {raw!r}") from None
    if count < 1:
        raise ValueError("sweep count must be >= 1")
    if count == 1:
        return (start,)
    return tuple(np.linspace(start, stop, count).tolist())


def _parse_int_list(raw) -> tuple[int, ...]:
    if isinstance(raw, int):
        return (raw,)
    if isinstance(raw, (list, tuple)):
        return tuple(int(v) for v in raw)
    try:
        return tuple(int(part) for part in str(raw).split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {raw!r}") from None


def _parse_float_list(raw) -> tuple[float, ...]:
    if isinstance(raw, (int, float)):
        return (float(raw),)
    if isinstance(raw, (list, tuple)):
        return tuple(float(v) for v in raw)
    try:
        return tuple(float(part) for part in str(raw).split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {raw!r}") from None


def _load_config(path: str | None) -> dict:
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    with open(path) as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError(f"config file {path!r} must contain a JSON object")
    return config


def _merged(args, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _resolve_run_config(args, config: dict, *, default_n_trunc: str) -> RunConfig:
    sweep = _merged(args, config, "alpha_sweep", None)
    alpha = _merged(args, config, "alpha", None)
    if sweep is not None and getattr(args, "alpha", None) is None:
        alphas = _parse_sweep(sweep)
    elif alpha is not None:
        alphas = (float(alpha),)
    else:
        alphas = (math.pi / 4.0,)
    return RunConfig(
        alphas=alphas,
        n_truncs=_parse_int_list(_merged(args, config, "n_trunc", default_n_trunc)),
        epsilon=float(_merged(args, config, "epsilon", 0.0)),
        variant=str(_merged(args, config, "variant", "both")),
        fmt=str(_merged(args, config, "format", "csv")),
        out=_merged(args, config, "out", None),
        jobs=int(_merged(args, config, "jobs", 1)),
    )


# ---------------------------------------------------------------- cost

COST_HEADER = [
    "alpha", "epsilon", "n_trunc", "prior",
    "overlap_before", "cost_before", "overlap_after", "cost_after",
    "deficit_reference", "deficit_shifted", "sum_rule_overlap", "note",
]


def _cost_row(task):
    alpha, n_trunc, epsilon = task
    r = post_insertion_cost(alpha, n_trunc, BarrierModel(epsilon))
    return [r.alpha, r.epsilon, r.n_trunc, r.prior,
            r.overlap_before, r.cost_before, r.overlap_after, r.cost_after,
            r.deficit_reference, r.deficit_shifted, r.sum_rule_overlap, r.note]


def run_cost(cfg: RunConfig):
    tasks = [(alpha, cfg.n_trunc, cfg.epsilon) for alpha in cfg.alphas]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_cost_row, tasks))
    else:
        rows = [_cost_row(task) for task in tasks]
    return COST_HEADER, rows


# ---------------------------------------------------------------- coeffs

COEFF_HEADER = [
    "alpha", "n",
    "a", "b", "c", "d",
    "norm_a", "norm_b", "norm_c", "norm_d",
    "oracle_a", "oracle_b", "oracle_c", "oracle_d",
    "abs_diff_a", "abs_diff_b", "abs_diff_c", "abs_diff_d",
    "deficit_reference", "deficit_shifted",
]

DISCREPANCY_HEADER = ["kind", "n", "alpha", "uncorrected", "oracle", "adopted"]


def run_coeffs(cfg: RunConfig, discrepancy_path: str | None):
    rows = []
    discrepancy_rows = []
    n_trunc = cfg.n_trunc
    for alpha in cfg.alphas:
        exp_ref = expand(reference_state(), alpha, n_trunc)
        exp_sh = expand(shifted_state(alpha), alpha, n_trunc)
        deficit_ref = exp_ref.deficit
        deficit_sh = exp_sh.deficit
        for i in range(n_trunc):
            n = i + 1
            closed = [exp_ref.coeffs_1[i], exp_ref.coeffs_2[i],
                      exp_sh.coeffs_1[i], exp_sh.coeffs_2[i]]
            normalized = [exp_ref.norm_coeffs_1[i], exp_ref.norm_coeffs_2[i],
                          exp_sh.norm_coeffs_1[i], exp_sh.norm_coeffs_2[i]]
            oracle = [oracle_coefficient(kind, n, alpha) for kind in "abcd"]
            diffs = [abs(cv - ov) for cv, ov in zip(closed, oracle)]
            rows.append([alpha, n, *closed, *normalized, *oracle, *diffs,
                         deficit_ref, deficit_sh])
        for rec in sign_discrepancies(alpha, n_trunc):
            discrepancy_rows.append(
                [rec.kind, rec.n, rec.alpha, rec.uncorrected, rec.oracle, rec.adopted])
    if discrepancy_path is not None:
        with open(discrepancy_path, "w", newline="") as fh:
            _write_csv(DISCREPANCY_HEADER, discrepancy_rows, fh)
    elif discrepancy_rows:
        print(f"note: {len(discrepancy_rows)} oracle sign corrections recorded; "
              "pass --discrepancies PATH to write them", file=sys.stderr)
    return COEFF_HEADER, rows


# ---------------------------------------------------------------- energy

def run_energy(cfg: RunConfig, nm_max: int):
    if nm_max < 1:
        raise ValueError("--nm-max must be >= 1")
    if cfg.variant == "both":
        header = ["alpha", "n", "m", "delta_e_nominal", "delta_e_conserving",
                  "variant_difference"]
    else:
        header = ["alpha", "n", "m", "delta_e"]
    rows = []
    idx = np.arange(1, nm_max + 1)
    for alpha in cfg.alphas:
        nominal = {m: delta_energy(idx, m, alpha, variant="nominal") for m in idx}
        conserving = {m: delta_energy(idx, m, alpha, variant="conserving") for m in idx}
        for n in idx:
            for m in idx:
                nom = float(nominal[m][n - 1])
                con = float(conserving[m][n - 1])
                if cfg.variant == "both":
                    rows.append([alpha, int(n), int(m), nom, con, nom - con])
                elif cfg.variant == "nominal":
                    rows.append([alpha, int(n), int(m), nom])
                else:
                    rows.append([alpha, int(n), int(m), con])
    return header, rows


# ---------------------------------------------------------------- evolve

EVOLVE_HEADER = ["theta", "density", "t", "chamber"]


def run_evolve(cfg: RunConfig, candidate: str, chambers, grid_points: int,
               time_fracs, times):
    if len(cfg.alphas) != 1:
        raise ValueError("evolve takes a single --alpha, not a sweep")
    if grid_points < 2:
        raise ValueError("--grid-points must be >= 2")
    alpha = cfg.alphas[0]
    state = reference_state() if candidate == "reference" else shifted_state(alpha)
    expansion = expand(state, alpha, cfg.n_trunc)
    rows = []
    for chamber in chambers:
        lo, hi = expansion.geometry.bounds(chamber)
        grid = np.linspace(lo, hi, grid_points)
        period = revival_period(expansion.geometry.width(chamber))
        chamber_times = times if times is not None else [f * period for f in time_fracs]
        for t in chamber_times:
            density = sample_density(evolve(expansion, chamber, t), grid)
            rows.extend([float(theta), float(rho), float(t), chamber]
                        for theta, rho in zip(grid, density))
    return EVOLVE_HEADER, rows


# ---------------------------------------------------------------- parseval

PARSEVAL_HEADER = [
    "alpha", "n_trunc",
    "deficit_reference", "deficit_shifted",
    "completeness_reference", "completeness_shifted",
    "sum_rule_overlap", "ring_overlap", "sum_rule_abs_error",
]


def run_parseval(cfg: RunConfig):
    rows = []
    for alpha in cfg.alphas:
        target = ring_overlap(reference_state(), shifted_state(alpha))
        for n_trunc in cfg.n_truncs:
            exp_ref = expand(reference_state(), alpha, n_trunc)
            exp_sh = expand(shifted_state(alpha), alpha, n_trunc)
            sum_rule = float(exp_ref.norm_coeffs_1 @ exp_sh.norm_coeffs_1
                             + exp_ref.norm_coeffs_2 @ exp_sh.norm_coeffs_2)
            rows.append([alpha, int(n_trunc),
                         exp_ref.deficit, exp_sh.deficit,
                         exp_ref.completeness, exp_sh.completeness,
                         sum_rule, target, abs(sum_rule - target)])
    return PARSEVAL_HEADER, rows


# ---------------------------------------------------------------- parser

def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    alpha_group = parser.add_mutually_exclusive_group()
    alpha_group.add_argument("--alpha", type=float, default=None,
                             help="barrier angle in radians, in (0, pi/2] (default pi/4)")
    alpha_group.add_argument("--alpha-sweep", default=None, metavar="START:STOP:COUNT",
                             help="inclusive linear sweep over alpha")
    parser.add_argument("--n-trunc", default=None,
                        help="expansion truncation; parseval accepts a comma list")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="barrier-state overlap in [0, 1] (default 0)")
    parser.add_argument("--variant", choices=VARIANT_CHOICES, default=None,
                        help="energy-transfer variant (default both)")
    parser.add_argument("--format", choices=FORMAT_CHOICES, default=None,
                        help="output format (default csv)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes for sweeps (default 1)")
    parser.add_argument("--config", default=None,
                        help=f"JSON config file (default from ${ENV_CONFIG})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringsplit",
        description="Barrier-insertion state discrimination on a ring: "
                    "costs, expansion coefficients, energy transfer, snapshots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cost = sub.add_parser("cost", help="Bayes cost before/after insertion")
    _add_common_flags(p_cost)

    p_coeffs = sub.add_parser("coeffs", help="expansion coefficients and oracle check")
    _add_common_flags(p_coeffs)
    p_coeffs.add_argument("--discrepancies", default=None, metavar="PATH",
                          help="write oracle sign corrections to this CSV")

    p_energy = sub.add_parser("energy", help="energy-transfer table over (n, m)")
    _add_common_flags(p_energy)
    p_energy.add_argument("--nm-max", type=int, default=None,
                          help="largest mode index per chamber (default 100)")

    p_evolve = sub.add_parser("evolve", help="density snapshots at chosen times")
    _add_common_flags(p_evolve)
    p_evolve.add_argument("--candidate", choices=CANDIDATE_CHOICES, default=None,
                          help="which candidate to evolve (default reference)")
    p_evolve.add_argument("--chamber", choices=("1", "2", "both"), default=None,
                          help="chamber(s) to sample (default both)")
    p_evolve.add_argument("--grid-points", type=int, default=None,
                          help="grid points per chamber (default 4096)")
    p_evolve.add_argument("--time-fracs", default=None,
                          help="comma list of times as fractions of the revival period "
                               "(default 0,0.25,0.5,0.75,1)")
    p_evolve.add_argument("--times", default=None,
                          help="comma list of absolute times (overrides --time-fracs)")

    p_parseval = sub.add_parser("parseval", help="completeness deficits vs truncation")
    _add_common_flags(p_parseval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.command == "cost":
            cfg = _resolve_run_config(args, config, default_n_trunc="1000")
            header, rows = run_cost(cfg)
        elif args.command == "coeffs":
            cfg = _resolve_run_config(args, config, default_n_trunc="50")
            header, rows = run_coeffs(cfg, _merged(args, config, "discrepancies", None))
        elif args.command == "energy":
            cfg = _resolve_run_config(args, config, default_n_trunc="1000")
            header, rows = run_energy(cfg, int(_merged(args, config, "nm_max", 100)))
        elif args.command == "evolve":
            cfg = _resolve_run_config(args, config, default_n_trunc="1000")
            chamber = str(_merged(args, config, "chamber", "both"))
            chambers = (1, 2) if chamber == "both" else (int(chamber),)
            times = _merged(args, config, "times", None)
            header, rows = run_evolve(
                cfg,
                candidate=str(_merged(args, config, "candidate", "reference")),
                chambers=chambers,
                grid_points=int(_merged(args, config, "grid_points", 4096)),
                time_fracs=_parse_float_list(
                    _merged(args, config, "time_fracs", "0,0.25,0.5,0.75,1")),
                times=None if times is None else _parse_float_list(times),
            )
        else:
            cfg = _resolve_run_config(args, config, default_n_trunc="100,1000,10000")
            header, rows = run_parseval(cfg)
        _emit(header, rows, cfg)
    except ConvergenceError as exc:
        print(f"ringsplit: quadrature failed to converge: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"ringsplit: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
