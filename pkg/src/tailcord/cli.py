"""Command-line front end: ``tailcord <subcommand> [--config FILE] [flags]``.

Settings are resolved as preset < JSON config file < flags.  Every
subcommand writes plain CSV (and ``report.json`` for ``validate``) into
``--output-dir``; floats are written in shortest round-trip form.
Exit status is 0 when every row was produced, 1 when some rows were
flagged (``quad_error = -1``), 2 on invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import asymptotics, empirics, gaussian_norming
from .concomitants import limit_scaling, replicate_arrays, run_replicates
from .errors import QuadratureError, TailcordError
from .models import Family, ModelSpec
from .quadrature import QuadratureConfig, Substitution

PRESETS = {
    "desk": {"family": "survival_clayton", "theta": 2.0, "n": 10_000, "replicates": 1000,
             "k_list": [10]},
    "full": {"family": "survival_clayton", "theta": 2.0, "n": 100_000, "replicates": 5000,
             "k_list": [10]},
}

_DEFAULTS = {
    "family": "survival_clayton", "theta": 2.0, "nu": 1.0, "gamma": 0.5, "rho": 0.5,
    "n": 10_000, "replicates": 1000, "k_list": [10], "seed": 12345,
    "grid": "sample-points", "abs_tol": 1e-9, "rel_tol": 1e-7, "max_subdivisions": 200,
    "substitution": "rational_t", "output_dir": ".", "surface": None,
    "threshold_u": 20.0, "y_grid": [2.0], "samples": 1_000_000, "n_list": None,
}

_FAMILIES = {
    "survival_clayton": Family.SURVIVAL_CLAYTON_PARETO,
    "logistic": Family.LOGISTIC_FRECHET,
    "gaussian": Family.GAUSSIAN,
}


class ConfigError(TailcordError, ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    v1_min: float
    v1_max: float
    v2_min: float
    v2_max: float
    steps: int
    spacing: str = "linear"

    def points(self):
        make = np.geomspace if self.spacing == "log" else np.linspace
        a = make(self.v1_min, self.v1_max, self.steps)
        b = make(self.v2_min, self.v2_max, self.steps)
        g1, g2 = np.meshgrid(a, b, indexing="ij")
        return np.column_stack([g1.ravel(), g2.ravel()])


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelSpec
    n: int
    replicates: int
    k_list: tuple
    seed: int
    grid: object  # "sample-points" or GridSpec
    quad: QuadratureConfig
    output_dir: Path
    threads: int = 1
    surface: str | None = None
    threshold_u: float = 20.0
    y_grid: tuple = (2.0,)
    samples: int = 1_000_000
    n_list: tuple = field(default=())

    @classmethod
    def from_mapping(cls, raw):
        try:
            fam = _FAMILIES[str(raw["family"])]
        except KeyError:
            raise ConfigError(f"unknown family {raw.get('family')!r}") from None
        if fam is Family.SURVIVAL_CLAYTON_PARETO:
            model = ModelSpec.survival_clayton(float(raw["theta"]), float(raw["nu"]))
        elif fam is Family.LOGISTIC_FRECHET:
            model = ModelSpec.logistic(float(raw["gamma"]))
        else:
            model = ModelSpec.gaussian(float(raw["rho"]))
        n = int(raw["n"])
        k_list = tuple(int(k) for k in raw["k_list"])
        if n < 2:
            raise ConfigError("n must be at least 2")
        if not k_list or any(not 1 <= k <= n - 1 for k in k_list):
            raise ConfigError(f"k_list values must lie in [1, {n - 1}]")
        if int(raw["replicates"]) < 1:
            raise ConfigError("replicates must be at least 1")
        grid = raw["grid"]
        if isinstance(grid, str):
            if grid != "sample-points":
                grid = _parse_grid(grid)
        elif isinstance(grid, dict):
            grid = GridSpec(float(grid["v1_min"]), float(grid["v1_max"]), float(grid["v2_min"]),
                            float(grid["v2_max"]), int(grid["steps"]),
                            grid.get("spacing", "linear"))
        else:
            raise ConfigError("grid must be 'sample-points' or a grid object")
        if isinstance(grid, GridSpec):
            if grid.steps < 1 or grid.spacing not in ("linear", "log"):
                raise ConfigError("grid needs steps >= 1 and spacing 'linear' or 'log'")
        quad = QuadratureConfig(float(raw["abs_tol"]), float(raw["rel_tol"]),
                                int(raw["max_subdivisions"]), Substitution(raw["substitution"]))
        seed = int(raw["seed"])
        if not 0 <= seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        n_list = tuple(float(v) for v in (raw.get("n_list") or ()))
        return cls(model, n, int(raw["replicates"]), k_list, seed, grid, quad,
                   Path(raw["output_dir"]), max(1, int(raw.get("threads") or 1)),
                   raw.get("surface"), float(raw["threshold_u"]),
                   tuple(float(y) for y in raw["y_grid"]), int(raw["samples"]), n_list)


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) not in (5, 6):
        raise ConfigError("grid string is 'v1_min,v1_max,v2_min,v2_max,steps[,spacing]'")
    spacing = parts[5].strip() if len(parts) == 6 else "linear"
    return GridSpec(*(float(p) for p in parts[:4]), int(parts[4]), spacing)


def _csv_list(cast):
    def parse(text):
        text = text.strip()
        return [] if not text else [cast(t) for t in text.split(",")]
    return parse


def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return repr(float(v))


def _write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


# ---------------------------------------------------------------------------

def _simulate(cfg):
    return run_replicates(cfg.model, cfg.n, cfg.k_list, cfg.replicates, cfg.seed, cfg.threads)


def cmd_simulate(cfg):
    records = _simulate(cfg)
    rows = [(r.replicate_index, s.k, s.v1, s.v2) for r in records for s in r.splits]
    _write_csv(cfg.output_dir / "replicates.csv", ["replicate", "k", "v1", "v2"], rows)
    print(f"wrote {len(rows)} rows to {cfg.output_dir / 'replicates.csv'}")
    return 0


def _grid_points(cfg, k):
    if isinstance(cfg.grid, GridSpec):
        return cfg.grid.points()
    records = _simulate(cfg)
    v1, v2 = replicate_arrays(records, k)
    s1, s2 = limit_scaling(cfg.model, cfg.n)
    return np.column_stack([v1 / s1, v2 / s2])


def _surface_rows(surface):
    return [(a, b, v, e) for (a, b), v, e in zip(surface.grid, surface.values, surface.errors)]


def _report_flags(name, surface):
    bad = int(np.sum(surface.errors < 0))
    if bad:
        print(f"{name}: {bad} of {len(surface.errors)} rows flagged with quad_error=-1",
              file=sys.stderr)
        return 1
    print(f"{name}: {len(surface.errors)} rows")
    return 0


def cmd_limit_surface(cfg):
    code = 0
    for k in cfg.k_list:
        surf = asymptotics.limit_surface(cfg.model, k, _grid_points(cfg, k), cfg.quad, strict=False)
        name = "limit_cdf.csv" if len(cfg.k_list) == 1 else f"limit_cdf_k{k}.csv"
        _write_csv(cfg.output_dir / name, ["v1", "v2", "cdf", "quad_error"], _surface_rows(surf))
        code = max(code, _report_flags(name, surf))
    return code


def cmd_finite_oracle(cfg):
    # Grid coordinates are on the rescaled axes used by limit-surface.
    s1, s2 = limit_scaling(cfg.model, cfg.n)
    code = 0
    for k in cfg.k_list:
        pts = _grid_points(cfg, k)
        surf = asymptotics.finite_sample_surface(cfg.model, cfg.n, k, pts * [s1, s2], cfg.quad,
                                                 strict=False)
        surf = replace(surf, grid=pts)
        name = "oracle_cdf.csv" if len(cfg.k_list) == 1 else f"oracle_cdf_k{k}.csv"
        _write_csv(cfg.output_dir / name, ["v1", "v2", "cdf", "quad_error"], _surface_rows(surf))
        code = max(code, _report_flags(name, surf))
    return code


def _provider(cfg, records, k):
    kind = cfg.surface or ("oracle" if cfg.model.family is Family.GAUSSIAN else "limit")
    if kind == "self":
        return empirics.ecdf_provider(records, k)
    if kind == "oracle":
        return asymptotics.finite_sample_provider(cfg.model, cfg.n, k, cfg.quad,
                                                  limit_scaling(cfg.model, cfg.n))
    if kind == "limit":
        return asymptotics.limit_cdf_provider(cfg.model, k, cfg.quad)
    raise ConfigError(f"unknown surface {kind!r}")


def cmd_validate(cfg):
    records = _simulate(cfg)
    k = cfg.k_list[0]
    report = empirics.validate_against_limit(records, _provider(cfg, records, k), k)
    report.metadata["surface"] = cfg.surface or (
        "oracle" if cfg.model.family is Family.GAUSSIAN else "limit")
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    with open(cfg.output_dir / "report.json", "w") as fh:
        json.dump(report.to_dict(), fh, indent=1)
        fh.write("\n")
    _write_csv(cfg.output_dir / "errors.csv",
               ["v1", "v2", "empirical", "theoretical", "abs_error"], report.point_errors)
    print(f"max_abs_error={report.max_abs_error!r}")
    print(f"mean_abs_error={report.mean_abs_error!r}")
    return 0


def cmd_ksweep(cfg):
    records = _simulate(cfg)
    rows = []
    for k in cfg.k_list:
        v1, v2 = replicate_arrays(records, k)
        report = empirics.validate_against_limit(records, _provider(cfg, records, k), k,
                                                 with_marginals=False)
        rows.append((k, float(np.median(v1)), float(np.median(v2)),
                     float(np.quantile(v2, 0.9)), report.max_abs_error))
    _write_csv(cfg.output_dir / "ksweep.csv",
               ["k", "v1_median", "v2_median", "v2_q90", "max_abs_error"], rows)
    for row in rows:
        print(f"k={row[0]} v2_median={row[2]!r} max_abs_error={row[4]!r}")
    return 0


def cmd_gaussian(cfg):
    rho = cfg.model.rho if cfg.model.family is Family.GAUSSIAN else None
    if rho is None:
        raise ConfigError("the gaussian subcommand needs --family gaussian")
    ns = cfg.n_list or (float(cfg.n),)
    rows = []
    for n in ns:
        c = gaussian_norming.norming_constants(n, rho)
        rows.append((int(n) if float(n).is_integer() else n, rho, c.a_n, c.b_n, c.a_tilde_n,
                     c.b_tilde_n, c.a_tilde_nE, c.b_tilde_nE))
    _write_csv(cfg.output_dir / "norming.csv",
               ["n", "rho", "a_n", "b_n", "a_tilde_n", "b_tilde_n", "a_tilde_nE", "b_tilde_nE"],
               rows)
    if cfg.y_grid:
        rep = gaussian_norming.validate_gaussian_limit(rho, cfg.threshold_u, cfg.y_grid,
                                                       cfg.samples, cfg.seed, cfg.threads)
        _write_csv(cfg.output_dir / "gauss_tail.csv",
                   ["y", "empirical", "limit", "mills", "rel_gap"],
                   [(p.y, p.empirical, p.limit, p.mills, p.rel_gap) for p in rep.points])
        for p in rep.points:
            print(f"y={p.y!r} empirical={p.empirical!r} limit={p.limit!r} rel_gap={p.rel_gap!r}")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "limit-surface": cmd_limit_surface,
    "finite-oracle": cmd_finite_oracle,
    "validate": cmd_validate,
    "ksweep": cmd_ksweep,
    "gaussian": cmd_gaussian,
}


def build_parser():
    p = argparse.ArgumentParser(prog="tailcord", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", type=Path, help="JSON file with settings")
        s.add_argument("--preset", choices=sorted(PRESETS))
        s.add_argument("--family", choices=sorted(_FAMILIES))
        s.add_argument("--theta", type=float)
        s.add_argument("--nu", type=float)
        s.add_argument("--gamma", type=float)
        s.add_argument("--rho", type=float)
        s.add_argument("--n", type=int)
        s.add_argument("--replicates", type=int)
        s.add_argument("--k-list", dest="k_list", type=_csv_list(int))
        s.add_argument("--seed", type=int)
        s.add_argument("--grid", help="'sample-points' or 'v1_min,v1_max,v2_min,v2_max,steps[,log]'")
        s.add_argument("--abs-tol", dest="abs_tol", type=float)
        s.add_argument("--rel-tol", dest="rel_tol", type=float)
        s.add_argument("--max-subdivisions", dest="max_subdivisions", type=int)
        s.add_argument("--substitution", choices=[m.value for m in Substitution])
        s.add_argument("--output-dir", dest="output_dir")
        s.add_argument("--threads", type=int)
        s.add_argument("--surface", choices=["limit", "oracle", "self"])
        s.add_argument("--threshold-u", dest="threshold_u", type=float)
        s.add_argument("--y-grid", dest="y_grid", type=_csv_list(float))
        s.add_argument("--samples", type=int)
        s.add_argument("--n-list", dest="n_list", type=_csv_list(float))
    return p


def resolve_config(args):
    raw = dict(_DEFAULTS)
    if args.preset:
        raw.update(PRESETS[args.preset])
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for nested in ("model", "quad"):
            raw.update(data.pop(nested, None) or {})
        raw.update(data)
    for key, value in vars(args).items():
        if key in ("command", "config", "preset") or value is None:
            continue
        raw[key] = value
    if raw.get("threads") is None:
        raw["threads"] = int(os.environ.get("TAILCORD_THREADS", "1") or 1)
    return ExperimentConfig.from_mapping(raw)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except QuadratureError as exc:
        print(f"error: quadrature failed: {exc}", file=sys.stderr)
        return 1
    except (TailcordError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
