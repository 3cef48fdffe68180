"""Experiment harness: compare expansion predictions to measured densities.

Subcommands (each takes ``--config <json>`` and ``--out <csv>``):

* ``coeffs``        -- per-index coefficient table: b(r), B1(r), the L^r-norm
                       coefficients A1/A2, the sup-norm pair At/Bt, the sign
                       threshold r0 and the monotonicity verdicts.
* ``verify``        -- per-(n, r) rows with measured and predicted Renyi
                       entropies and entropy powers, residuals, and residuals
                       scaled by n**((s-2)/2).
* ``monotonicity``  -- finite differences of N_r(Z_n) over a consecutive run
                       of n, empirical sign pattern versus prediction.
* ``locallimit``    -- weighted sup distance between p_n and the corrected
                       density, with the fitted log-log decay slope.

The JSON config is flat; unknown keys are rejected.  Keys:

    distribution    "uniform" | "gamma" | "two_sided_exponential" |
                    "gaussian_mixture" | "gaussian" | "grid"
    alpha           gamma shape parameter (gamma only)
    weights/means/sigmas   mixture parameters (gaussian_mixture only)
    density_file    two-column CSV x,p (grid only)
    r_values        list of entropy indexes: numbers > 1, 1, or "inf"
    n_values        ascending list of positive integers
    moment_order    real s in [2, 8]: moments assumed available
    grid_points     inversion grid size (default 131072)
    grid_extent     half-width of the spatial grid (default 16.0)
    out             default output path (overridden by --out)

Exit codes: 0 success, 2 config error, 3 numerical failure.  Runs are
deterministic: fixed quadrature, no randomness, floats printed with 17
significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import distributions, maxdensity, numerics
from .cumulants import standard_cumulants
from .edgeworth import EdgeworthModel
from .expansion import (
    a1_closed_form,
    a2_from_integrals,
    b_coefficient,
    entropy_expansion,
    gaussian_entropy_power,
    gaussian_renyi_entropy,
    monotonicity_prediction,
    sign_change_threshold,
)

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "main", "richardson"]

_CONFIG_KEYS = {
    "distribution",
    "alpha",
    "weights",
    "means",
    "sigmas",
    "density_file",
    "r_values",
    "n_values",
    "moment_order",
    "grid_points",
    "grid_extent",
    "out",
}

# finite differences smaller than this (relative to N_r(Z)) count as noise
_SIGN_NOISE = 1e-9


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class ExperimentConfig:
    """Validated experiment parameters (see the module docstring for keys)."""

    def __init__(self, data: dict):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "distribution" not in data:
            raise ConfigError("config needs a 'distribution'")
        self.distribution = data["distribution"]
        self.params = {
            k: data[k]
            for k in ("alpha", "weights", "means", "sigmas", "density_file")
            if k in data
        }

        self.r_values = data.get("r_values", [2])
        if not isinstance(self.r_values, list) or not self.r_values:
            raise ConfigError("r_values must be a non-empty list")
        for r in self.r_values:
            if r == "inf":
                continue
            if not isinstance(r, (int, float)) or isinstance(r, bool):
                raise ConfigError(f"invalid r value {r!r}")
            if r != 1 and not r > 1:
                raise ConfigError(f"r values must be 1, > 1, or 'inf'; got {r}")

        self.n_values = data.get("n_values", [])
        if not isinstance(self.n_values, list):
            raise ConfigError("n_values must be a list")
        for n in self.n_values:
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ConfigError(f"invalid n value {n!r}")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ConfigError("n_values must be strictly ascending")

        self.moment_order = data.get("moment_order", 6)
        if not isinstance(self.moment_order, (int, float)) or not (
            2 <= self.moment_order <= 8
        ):
            raise ConfigError("moment_order must lie in [2, 8]")

        self.grid_points = data.get("grid_points", numerics.DEFAULT_GRID_POINTS)
        self.grid_extent = data.get("grid_extent", numerics.DEFAULT_GRID_EXTENT)
        if not isinstance(self.grid_points, int) or self.grid_points < 1024:
            raise ConfigError("grid_points must be an integer >= 1024")
        if not self.grid_extent >= 12:
            raise ConfigError("grid_extent must be >= 12")
        self.out = data.get("out")

    @property
    def integer_order(self) -> int:
        return int(math.floor(self.moment_order))

    def build_spec(self) -> distributions.DistributionSpec:
        params = dict(self.params)
        if self.distribution == "grid":
            path = params.pop("density_file", None)
            if path is None:
                raise ConfigError("grid distribution needs density_file")
            xs, ps = [], []
            try:
                with open(path, newline="") as fh:
                    for row in csv.reader(fh):
                        if not row or row[0].lstrip().startswith("x"):
                            continue
                        xs.append(float(row[0]))
                        ps.append(float(row[1]))
            except OSError as exc:
                raise ConfigError(f"cannot read density_file: {exc}") from exc
            try:
                return distributions.GridDensity(np.array(xs), np.array(ps))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        try:
            return distributions.from_name(self.distribution, **params)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return ExperimentConfig(data)


def richardson(estimate_n: float, estimate_2n: float) -> float:
    """Two-point Richardson extrapolation for first-order-in-1/n estimators:
    2*E(2n) - E(n) removes the 1/n contamination."""
    return 2.0 * estimate_2n - estimate_n


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _fmt_r(r) -> str:
    if r == "inf" or r == math.inf:
        return "inf"
    return _fmt(r)


def _write_rows(path, header, rows) -> None:
    def dump(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])

    if path is None:
        dump(sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            dump(fh)


def _grids(cfg: ExperimentConfig, spec):
    """Density grids for every configured n, in ascending order."""
    out = {}
    for n in cfg.n_values:
        out[n] = numerics.density_of_normalized_sum(
            spec, n, npoints=cfg.grid_points, extent=cfg.grid_extent
        )
    return out


def _dump_grids(grids, directory, cfg: ExperimentConfig) -> None:
    import os

    os.makedirs(directory, exist_ok=True)
    for n, grid in grids.items():
        grid.write_csv(
            os.path.join(directory, f"density_{cfg.distribution}_n{n}.csv")
        )


# -- subcommands ----------------------------------------------------------


def cmd_coeffs(cfg: ExperimentConfig):
    spec = cfg.build_spec()
    if cfg.moment_order < 4:
        raise ConfigError("coeffs needs moment_order >= 4")
    order = cfg.integer_order
    cums = standard_cumulants(spec, order=order)
    r0 = sign_change_threshold(cums)
    if order >= 6:
        a_sup, b_sup = maxdensity.ninf_expansion(cums)
    else:
        a_sup = b_sup = None
    header = ["r", "b", "B1", "a1", "a2", "A_tilde", "B_tilde", "r0", "verdict"]
    rows = []
    for r in cfg.r_values:
        if r == "inf":
            verdict = maxdensity.monotonicity_prediction_inf(cums)
            b = b_coefficient(math.inf, cums)
            a1 = a2 = None
        else:
            verdict = monotonicity_prediction(r, cums)
            b = b_coefficient(r, cums)
            a1 = a1_closed_form(r, cums) if r > 1 else None
            a2 = a2_from_integrals(r, cums) if r > 1 and order >= 6 else None
        rows.append(
            [
                _fmt_r(r),
                b,
                -b,
                a1,
                a2,
                a_sup,
                b_sup,
                "none" if r0 is None else r0,
                verdict,
            ]
        )
    return header, rows


def _predictions(cfg: ExperimentConfig, cums, r):
    """(h_reference, h_offset(n), power_factor(n)) for one entropy index."""
    order = cfg.integer_order
    if r == "inf":
        sn = maxdensity.supnorm_coefficients(cums)
        a_coef, b_coef = float(sn.A), float(sn.B)
        at, bt = float(sn.A_tilde), float(sn.B_tilde)

        def offset(n):
            return -math.log(1.0 + a_coef / n + b_coef / n**2)

        def factor(n):
            return 1.0 - at / n + bt / n**2

        return gaussian_renyi_entropy(math.inf), offset, factor
    if r == 1:
        rate = float(-b_coefficient(1, cums))

        def offset(n):
            return -rate / n

        def factor(n):
            return math.exp(2.0 * offset(n))

        return gaussian_renyi_entropy(1), offset, factor

    coeffs = entropy_expansion(order, r, cums)
    return (
        gaussian_renyi_entropy(r),
        coeffs.entropy_offset,
        coeffs.entropy_power_factor,
    )


def cmd_verify(cfg: ExperimentConfig, dump_dir=None):
    spec = cfg.build_spec()
    if not cfg.n_values:
        raise ConfigError("verify needs n_values")
    if "inf" in cfg.r_values and cfg.moment_order < 6:
        raise ConfigError("r = inf predictions need moment_order >= 6")
    if 1 in cfg.r_values and cfg.moment_order < 4:
        raise ConfigError("r = 1 predictions need moment_order >= 4")
    order = cfg.integer_order
    cums = standard_cumulants(spec, order=order)
    grids = _grids(cfg, spec)
    if dump_dir is not None:
        _dump_grids(grids, dump_dir, cfg)
    scale_exp = (cfg.moment_order - 2) / 2
    header = [
        "n",
        "r",
        "h_r_numeric",
        "h_r_predicted",
        "residual",
        "scaled_residual",
        "N_r_numeric",
        "N_r_predicted",
    ]
    rows = []
    for n in cfg.n_values:
        grid = grids[n]
        for r in cfg.r_values:
            h_ref, offset, factor = _predictions(cfg, cums, r)
            if r == "inf":
                sup = numerics.sup_norm(grid)
                h_num = -math.log(sup)
                n_num = sup**-2.0
            elif r == 1:
                h_num = numerics.shannon_entropy(grid)
                n_num = math.exp(2.0 * h_num)
            else:
                h_num = numerics.renyi_entropy(grid, r)
                n_num = numerics.entropy_power(grid, r)
            h_pred = h_ref + offset(n)
            n_pred = (
                gaussian_entropy_power(math.inf if r == "inf" else r) * factor(n)
            )
            residual = h_num - h_pred
            rows.append(
                [
                    n,
                    _fmt_r(r),
                    h_num,
                    h_pred,
                    residual,
                    residual * n**scale_exp,
                    n_num,
                    n_pred,
                ]
            )
    return header, rows


def cmd_monotonicity(cfg: ExperimentConfig, dump_dir=None):
    spec = cfg.build_spec()
    if len(cfg.n_values) < 3:
        raise ConfigError("monotonicity needs at least three n values")
    if any(b - a != 1 for a, b in zip(cfg.n_values, cfg.n_values[1:])):
        raise ConfigError("monotonicity needs a consecutive run of n values")
    cums = standard_cumulants(spec, order=max(4, cfg.integer_order))
    grids = _grids(cfg, spec)
    if dump_dir is not None:
        _dump_grids(grids, dump_dir, cfg)
    header = [
        "r",
        "n",
        "N_r_numeric",
        "diff_to_next",
        "sign",
        "empirical_n0",
        "empirical_verdict",
        "predicted_verdict",
        "match",
    ]
    rows = []
    for r in cfg.r_values:
        if r == "inf":
            values = [numerics.sup_norm(grids[n]) ** -2.0 for n in cfg.n_values]
            predicted = maxdensity.monotonicity_prediction_inf(cums)
            noise = _SIGN_NOISE * gaussian_entropy_power(math.inf)
        else:
            if r == 1:
                values = [
                    math.exp(2.0 * numerics.shannon_entropy(grids[n]))
                    for n in cfg.n_values
                ]
            else:
                values = [numerics.entropy_power(grids[n], r) for n in cfg.n_values]
            predicted = monotonicity_prediction(1 if r == 1 else r, cums)
            noise = _SIGN_NOISE * gaussian_entropy_power(r)
        diffs = [b - a for a, b in zip(values, values[1:])]
        signs = [0 if abs(d) <= noise else (1 if d > 0 else -1) for d in diffs]
        final = signs[-1] if signs else 0
        if final == 0:
            verdict = "indeterminate"
        else:
            verdict = (
                "eventually_increasing" if final > 0 else "eventually_decreasing"
            )
        # empirical n0: start of the longest suffix with the final sign
        idx = len(signs)
        while idx > 0 and signs[idx - 1] == final:
            idx -= 1
        n0 = cfg.n_values[idx] if final != 0 else None
        match = "yes" if verdict == predicted else "no"
        for i, n in enumerate(cfg.n_values):
            rows.append(
                [
                    _fmt_r(r),
                    n,
                    values[i],
                    diffs[i] if i < len(diffs) else None,
                    signs[i] if i < len(diffs) else None,
                    n0,
                    verdict,
                    predicted,
                    match,
                ]
            )
    return header, rows


def cmd_locallimit(cfg: ExperimentConfig, dump_dir=None):
    spec = cfg.build_spec()
    if not cfg.n_values:
        raise ConfigError("locallimit needs n_values")
    m = cfg.integer_order
    if m > 6:
        raise ConfigError("locallimit needs moment_order <= 6")
    cums = standard_cumulants(spec, order=m)
    model = EdgeworthModel.from_cumulants(cums, order=m)
    grids = _grids(cfg, spec)
    if dump_dir is not None:
        _dump_grids(grids, dump_dir, cfg)
    errors = []
    for n in cfg.n_values:
        grid = grids[n]
        x = grid.x
        weight = 1.0 + np.abs(x) ** m
        approx = model.density(n, x)
        errors.append(float(np.max(weight * np.abs(grid.values - approx))))
    if len(cfg.n_values) >= 2:
        slope = float(
            np.polyfit(np.log(cfg.n_values), np.log(errors), 1)[0]
        )
    else:
        slope = None
    header = ["n", "sup_weighted_error", "fitted_slope"]
    rows = [[n, e, slope] for n, e in zip(cfg.n_values, errors)]
    return header, rows


# -- CLI -------------------------------------------------------------------

_COMMANDS = {
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "monotonicity": cmd_monotonicity,
    "locallimit": cmd_locallimit,
}

_EPILOG = """config keys:
  distribution   uniform | gamma | two_sided_exponential | gaussian_mixture |
                 gaussian | grid
  alpha          shape parameter (distribution = gamma)
  weights, means, sigmas   lists (distribution = gaussian_mixture)
  density_file   two-column CSV x,p (distribution = grid)
  r_values       entropy indexes: numbers > 1, 1 (Shannon), or "inf"
  n_values       strictly ascending positive integers
  moment_order   real s in [2, 8] (moments assumed finite up to s)
  grid_points    inversion grid size, even, >= 1024 (default 131072)
  grid_extent    spatial half-width, >= 12 (default 16.0)
  out            default output CSV path (overridden by --out)
"""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renyi-clt",
        description=(
            "Verification experiments for entropy expansions of normalized sums"
        ),
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "coeffs": "expansion coefficient table per entropy index",
        "verify": "measured vs predicted entropies per (n, r)",
        "monotonicity": "finite differences of N_r(Z_n) vs predicted verdict",
        "locallimit": "weighted sup distance of p_n from the corrected density",
    }
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(
            name,
            help=descriptions[name],
            epilog=_EPILOG,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", help="output CSV path (default: stdout or config 'out')")
        if name != "coeffs":
            p.add_argument(
                "--dump-density",
                metavar="DIR",
                help="also dump every density grid as CSV (columns x, p_n)",
            )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    dump_dir = getattr(args, "dump_density", None)
    try:
        if args.command == "coeffs":
            header, rows = cmd_coeffs(cfg)
        else:
            header, rows = _COMMANDS[args.command](cfg, dump_dir=dump_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (numerics.GridError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    _write_rows(args.out or cfg.out, header, rows)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
