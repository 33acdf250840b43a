"""Configuration ingestion, parameter sweeps, suite execution, reporting.

The config format is a flat key-value text document (one ``key = value``
per line, ``#`` comments, sections spelled with dotted keys) so that any
implementation can parse it with a few lines of code.  Sweeps over n, k,
mu, H, p are Cartesian products; sweep order is the sorted order of keys
and then of values, which fixes the output byte-for-byte.

Exit codes: 0 all checks pass, 2 any inequality check fails, 3 any check is
hypothesis-gated and none fail, 1 on usage/config errors (including
per-report evaluation errors).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .checks import (RADII_KEYS, THEOREM_IDS, params_hash, run_check)
from .errors import ConfigError, CurvCompError
from .model_space import (ConstantRequest, ModelParams,
                          annulus_comparison_constant, area_comparison_constant,
                          ball_comparison_constant, diameter_threshold,
                          doubling_threshold, mean_curvature)
from .quadrature import QuadratureSpec, RadialGrid, cumulative_integral
from .warped import (BUILTIN_FAMILIES, WarpedSpace, _mean_curvature_clamped,
                     _warp_value, _weight_value, area_density,
                     deficit_profile, space_from_table, weighted_area)

PROFILE_COLUMNS = ("r", "phi", "f", "m_f", "m_model", "lambda_min", "deficit",
                   "A_f", "V_f")

_SWEEP_KEYS = ("H", "k", "mu", "n", "p")
_REQUIRED_KEYS = ("family", "n", "k", "mu", "H", "p", "theorems", "output")
_FAMILY_PARAM_KEYS = {"a", "delta", "q", "path"}


@dataclass(frozen=True)
class SuiteConfig:
    """Validated suite description; immutable and comparable."""

    family: str
    family_params: tuple
    n: tuple
    k: tuple
    mu: tuple
    H: tuple
    p: tuple
    omega: float | None
    L: float | None
    beta: float
    theorems: tuple
    radii: tuple
    grid_m: int
    grid_gamma: float | None
    grid_r_min: float | None
    quadrature: QuadratureSpec
    tolerance: float
    output: str
    output_format: str
    figures: bool

    def radii_for(self, theorem_id):
        return dict(self.radii).get(theorem_id)


def _parse_float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {raw!r}") from None


def _parse_float_list(key, raw):
    vals = tuple(_parse_float(key, part) for part in raw.split(","))
    if not vals:
        raise ConfigError(key, "empty value list")
    return vals


def _parse_int(key, raw):
    value = _parse_float(key, raw)
    if value != int(value):
        raise ConfigError(key, f"expected an integer, got {raw!r}")
    return int(value)


def _parse_bool(key, raw):
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigError(key, f"expected a boolean, got {raw!r}")


def parse_config(text: str) -> SuiteConfig:
    """Parse and validate a flat key-value config document.

    Every constraint violation is reported with the offending key path.
    """
    raw = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {line_no}", f"expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key in raw:
            raise ConfigError(key, "duplicate key")
        raw[key] = value

    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError(key, "required key is missing")

    known = {"family", "n", "k", "mu", "H", "p", "omega", "L", "beta",
             "theorems", "grid.m", "grid.gamma", "grid.r_min",
             "quadrature.abs_tol", "quadrature.rel_tol",
             "quadrature.max_refinements", "tolerance", "output",
             "output.format", "figures"}
    for key in raw:
        if key in known:
            continue
        if key.startswith("family."):
            if key.split(".", 1)[1] not in _FAMILY_PARAM_KEYS:
                raise ConfigError(key, "unknown family parameter")
            continue
        if key.startswith("radii."):
            if key.split(".", 1)[1] not in RADII_KEYS:
                raise ConfigError(key, "unknown theorem id in radii key")
            continue
        raise ConfigError(key, "unknown key")

    family = raw["family"]
    if family != "table" and family not in BUILTIN_FAMILIES:
        raise ConfigError(
            "family",
            f"unknown family {family!r}; choose one of "
            f"{sorted(BUILTIN_FAMILIES)} or 'table'")
    family_params = []
    for key, value in raw.items():
        if key.startswith("family."):
            name = key.split(".", 1)[1]
            family_params.append(
                (name, value if name == "path" else _parse_float(key, value)))
    family_params.sort()
    if family == "table" and "path" not in dict(family_params):
        raise ConfigError("family.path", "table family needs a profile path")

    n_vals = tuple(_parse_int("n", part) for part in raw["n"].split(","))
    k_vals = _parse_float_list("k", raw["k"])
    mu_vals = _parse_float_list("mu", raw["mu"])
    h_vals = _parse_float_list("H", raw["H"])
    p_vals = _parse_float_list("p", raw["p"])

    for n in n_vals:
        if n < 2:
            raise ConfigError("n", f"n must be an integer >= 2, got {n}")
    for k in k_vals:
        if k <= 0.0:
            raise ConfigError("k", f"k must be positive, got {k}")
    for mu in mu_vals:
        for k in k_vals:
            if mu < 1.0 / k:
                raise ConfigError(
                    "mu", f"mu >= 1/k violated (mu={mu}, k={k}, 1/k={1.0 / k})")
    for p in p_vals:
        for n in n_vals:
            for k in k_vals:
                if 2.0 * p <= n + k:
                    raise ConfigError(
                        "p", f"2p > n+k violated (p={p}, n={n}, k={k})")

    theorems = tuple(part.strip() for part in raw["theorems"].split(","))
    for tid in theorems:
        if tid not in THEOREM_IDS:
            raise ConfigError(
                "theorems", f"unknown theorem id {tid!r}; valid: {THEOREM_IDS}")

    radii = []
    for key, value in raw.items():
        if not key.startswith("radii."):
            continue
        tid = key.split(".", 1)[1]
        vals = _parse_float_list(key, value)
        expected = len(RADII_KEYS[tid])
        if len(vals) != expected:
            raise ConfigError(
                key, f"{tid} needs {expected} radii {RADII_KEYS[tid]}, "
                f"got {len(vals)}")
        if any(v < 0.0 for v in vals):
            raise ConfigError(key, "radii must be nonnegative")
        if tid in ("T31_eq31", "T31_eq32", "T2", "T3", "C32_doubling"):
            if any(a > b for a, b in zip(vals, vals[1:])):
                raise ConfigError(key, f"radii must be ordered, got {vals}")
        radii.append((tid, vals))
    radii.sort()

    omega = _parse_float("omega", raw["omega"]) if "omega" in raw else None
    if omega is not None and omega <= 0.0:
        raise ConfigError("omega", "omega must be positive")
    L = _parse_float("L", raw["L"]) if "L" in raw else None
    beta = _parse_float("beta", raw["beta"]) if "beta" in raw else 2.0
    if beta <= 1.0:
        raise ConfigError("beta", f"beta must exceed 1, got {beta}")

    grid_m = _parse_int("grid.m", raw["grid.m"]) if "grid.m" in raw else 4096
    if grid_m < 64:
        raise ConfigError("grid.m", "grid.m must be >= 64")
    grid_gamma = (_parse_float("grid.gamma", raw["grid.gamma"])
                  if "grid.gamma" in raw else None)
    if grid_gamma is not None and grid_gamma < 1.0:
        raise ConfigError("grid.gamma", "grid.gamma must be >= 1")
    grid_r_min = (_parse_float("grid.r_min", raw["grid.r_min"])
                  if "grid.r_min" in raw else None)
    if grid_r_min is not None and grid_r_min <= 0.0:
        raise ConfigError("grid.r_min", "grid.r_min must be positive")

    try:
        quadrature = QuadratureSpec(
            abs_tol=(_parse_float("quadrature.abs_tol", raw["quadrature.abs_tol"])
                     if "quadrature.abs_tol" in raw else 1e-10),
            rel_tol=(_parse_float("quadrature.rel_tol", raw["quadrature.rel_tol"])
                     if "quadrature.rel_tol" in raw else 1e-9),
            max_refinements=(_parse_int("quadrature.max_refinements",
                                        raw["quadrature.max_refinements"])
                             if "quadrature.max_refinements" in raw else 20),
        )
    except CurvCompError as exc:
        raise ConfigError("quadrature", str(exc)) from None

    tolerance = (_parse_float("tolerance", raw["tolerance"])
                 if "tolerance" in raw else 1e-7)
    if tolerance <= 0.0:
        raise ConfigError("tolerance", "tolerance must be positive")

    output_format = raw.get("output.format", "json")
    if output_format not in ("json", "csv"):
        raise ConfigError("output.format", f"expected json or csv, got {output_format!r}")
    figures = _parse_bool("figures", raw["figures"]) if "figures" in raw else True

    return SuiteConfig(
        family=family, family_params=tuple(family_params), n=n_vals,
        k=k_vals, mu=mu_vals, H=h_vals, p=p_vals, omega=omega, L=L, beta=beta,
        theorems=theorems, radii=tuple(radii), grid_m=grid_m,
        grid_gamma=grid_gamma, grid_r_min=grid_r_min, quadrature=quadrature,
        tolerance=tolerance, output=raw["output"], output_format=output_format,
        figures=figures)


def serialize_config(config: SuiteConfig) -> str:
    """Inverse of parse_config: parse_config(serialize_config(c)) == c."""
    lines = [f"family = {config.family}"]
    for name, value in config.family_params:
        lines.append(f"family.{name} = {value!r}" if isinstance(value, float)
                     else f"family.{name} = {value}")
    lines.append("n = " + ", ".join(str(v) for v in config.n))
    for key in ("k", "mu", "H", "p"):
        vals = getattr(config, key)
        lines.append(f"{key} = " + ", ".join(repr(v) for v in vals))
    if config.omega is not None:
        lines.append(f"omega = {config.omega!r}")
    if config.L is not None:
        lines.append(f"L = {config.L!r}")
    lines.append(f"beta = {config.beta!r}")
    lines.append("theorems = " + ", ".join(config.theorems))
    for tid, vals in config.radii:
        lines.append(f"radii.{tid} = " + ", ".join(repr(v) for v in vals))
    lines.append(f"grid.m = {config.grid_m}")
    if config.grid_gamma is not None:
        lines.append(f"grid.gamma = {config.grid_gamma!r}")
    if config.grid_r_min is not None:
        lines.append(f"grid.r_min = {config.grid_r_min!r}")
    lines.append(f"quadrature.abs_tol = {config.quadrature.abs_tol!r}")
    lines.append(f"quadrature.rel_tol = {config.quadrature.rel_tol!r}")
    lines.append(f"quadrature.max_refinements = {config.quadrature.max_refinements}")
    lines.append(f"tolerance = {config.tolerance!r}")
    lines.append(f"output = {config.output}")
    lines.append(f"output.format = {config.output_format}")
    lines.append(f"figures = {'true' if config.figures else 'false'}")
    return "\n".join(lines) + "\n"


def _build_space(config: SuiteConfig, combo: dict) -> WarpedSpace:
    params = dict(config.family_params)
    kwargs = dict(n=combo["n"], k=combo["k"], mu=combo["mu"],
                  omega=config.omega)
    if config.family == "table":
        return space_from_table(params["path"], n=combo["n"], k=combo["k"],
                                mu=combo["mu"], omega=config.omega)
    if config.L is not None:
        kwargs["L"] = config.L
    factory = BUILTIN_FAMILIES[config.family]
    if config.family == "gaussian_flat":
        kwargs["a"] = params.get("a", 1.0)
    elif config.family == "perturbed_sphere":
        kwargs["delta"] = params.get("delta", 0.05)
        if "q" in params:
            kwargs["q"] = params["q"]
    return factory(**kwargs)


def default_radii(theorem_id, space, model):
    """Deterministic per-family radii when a config leaves them out."""
    if model.H > 0.0:
        upper = min(0.95 * space.L, 0.95 * model.half_period)
    else:
        upper = min(0.95 * space.L, 2.0)
    if theorem_id in ("T1_eq16", "T1_eq17"):
        return (upper,)
    if theorem_id in ("T1_ext_163", "T1_ext_164"):
        return (min(0.75 * model.period, 0.98 * space.L),)
    if theorem_id == "T31_eq32":
        return (min(0.6 * model.period, 0.9 * space.L),
                min(0.75 * model.period, 0.98 * space.L))
    if theorem_id in ("T31_eq31", "T2"):
        return (0.5 * upper, upper)
    if theorem_id == "T3":
        return (0.2 * upper, 0.4 * upper, 0.8 * upper, upper)
    if theorem_id == "C32_doubling":
        return (0.5 * upper, upper, upper)
    if theorem_id == "Eq21_chain":
        return (upper,)
    return (0.5 * upper, upper)  # T4_threshold


def _combos(config: SuiteConfig):
    values = {key: tuple(sorted(set(getattr(config, key))))
              for key in _SWEEP_KEYS}
    for point in itertools.product(*(values[key] for key in _SWEEP_KEYS)):
        yield dict(zip(_SWEEP_KEYS, point))


def _scan_grid_for(config, space, radii, theorem_id, p):
    if theorem_id not in ("T1_eq17", "T1_ext_164", "Eq21_chain"):
        return None
    r_top = radii[-1] if theorem_id != "Eq21_chain" else radii[0]
    r_min = config.grid_r_min if config.grid_r_min is not None else space.r_pole
    gamma = config.grid_gamma if config.grid_gamma is not None else 2.0 * p - 1.0
    if theorem_id == "Eq21_chain":
        r_min = max(r_min, 1e-3 * r_top)
    return RadialGrid(r_min, r_top, m=config.grid_m, gamma=gamma)


def run_suite(config: SuiteConfig):
    """Run every (theorem, sweep point) pair; returns (document, exit_code).

    Check-level errors become per-report entries rather than aborting the
    suite.
    """
    entries = []
    for combo in _combos(config):
        try:
            space = _build_space(config, combo)
            model = ModelParams(n=combo["n"], k=combo["k"], H=combo["H"],
                                omega=space.omega)
        except CurvCompError as exc:
            for tid in sorted(set(config.theorems)):
                entries.append(_error_entry(tid, combo, exc, config))
            continue
        for tid in sorted(set(config.theorems)):
            radii = config.radii_for(tid) or default_radii(tid, space, model)
            grid = _scan_grid_for(config, space, radii, tid, combo["p"])
            try:
                report = run_check(tid, space, model, combo["p"], radii,
                                   beta=config.beta, spec=config.quadrature,
                                   tol=config.tolerance, grid=grid)
                entries.append(report.to_dict())
            except CurvCompError as exc:
                entries.append(_error_entry(tid, combo, exc, config,
                                            radii=radii, space=space))
    entries.sort(key=lambda e: (e["theorem_id"], params_hash(e["params"])))
    document = {
        "header": {
            "tool": "curvcomp",
            "version": __version__,
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "family": config.family,
            "grid": {"m": config.grid_m, "gamma": config.grid_gamma},
            "quadrature": {
                "abs_tol": config.quadrature.abs_tol,
                "rel_tol": config.quadrature.rel_tol,
                "max_refinements": config.quadrature.max_refinements,
            },
            "tolerance": config.tolerance,
        },
        "reports": entries,
    }
    return document, _exit_code(entries)


def _error_entry(theorem_id, combo, exc, config, radii=None, space=None):
    params = dict(combo)
    params["family"] = config.family
    if space is not None:
        params["space"] = space.name
    if radii is not None:
        params["radii"] = list(radii)
    return {
        "theorem_id": theorem_id,
        "params": params,
        "lhs": None,
        "rhs": None,
        "margin": None,
        "pass": None,
        "tolerance": config.tolerance,
        "grid_meta": {},
        "status": "error",
        "error": str(exc),
    }


def _exit_code(entries):
    statuses = {e["status"] for e in entries}
    if "fail" in statuses:
        return 2
    if "error" in statuses:
        return 1
    if "hypothesis-not-met" in statuses:
        return 3
    return 0


def suite_document_json(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def suite_document_csv(document) -> str:
    lines = ["theorem_id,status,pass,lhs,rhs,margin,tolerance,params,grid_meta"]
    for entry in document["reports"]:
        params = json.dumps(entry["params"], sort_keys=True)
        grid_meta = json.dumps(entry["grid_meta"], sort_keys=True)
        cells = [
            entry["theorem_id"],
            entry["status"],
            "" if entry["pass"] is None else str(entry["pass"]).lower(),
            "" if entry["lhs"] is None else repr(float(entry["lhs"])),
            "" if entry["rhs"] is None else repr(float(entry["rhs"])),
            "" if entry["margin"] is None else repr(float(entry["margin"])),
            repr(float(entry["tolerance"])),
            '"' + params.replace('"', '""') + '"',
            '"' + grid_meta.replace('"', '""') + '"',
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --- radial profile emission -----------------------------------------------

def profile_table(space, model, grid: RadialGrid) -> dict:
    """Evaluate the profile columns on the grid nodes."""
    nodes = grid.nodes()
    if model.H > 0.0 and nodes[-1] >= model.period:
        raise ConfigError(
            "grid", f"profile grid extends past the model period {model.period}")
    profile = deficit_profile(space, model.H, grid)
    vf = space.omega * cumulative_integral(lambda t: area_density(space, t),
                                           nodes)
    return {
        "r": nodes,
        "phi": _warp_value(space, nodes),
        "f": _weight_value(space, nodes),
        "m_f": _mean_curvature_clamped(space, nodes),
        "m_model": mean_curvature(model, nodes),
        "lambda_min": profile.lambda_min,
        "deficit": profile.deficit,
        "A_f": weighted_area(space, nodes),
        "V_f": vf,
    }


def emit_profiles(space, model, grid: RadialGrid, path) -> dict:
    """Write the radial profile CSV (one row per node) and return the table."""
    table = profile_table(space, model, grid)
    lines = [",".join(PROFILE_COLUMNS)]
    for i in range(len(table["r"])):
        lines.append(",".join(repr(float(table[c][i])) for c in PROFILE_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")
    return table


# --- command line ------------------------------------------------------------

def _load_config(path, args):
    if path is None:
        raise ConfigError("--config", "a config file is required")
    config = parse_config(Path(path).read_text())
    overrides = {}
    if getattr(args, "out", None):
        overrides["output"] = args.out
    if getattr(args, "format", None):
        overrides["output_format"] = args.format
    if getattr(args, "tol", None) is not None:
        overrides["tolerance"] = args.tol
    if getattr(args, "grid_m", None) is not None:
        overrides["grid_m"] = args.grid_m
    if getattr(args, "no_figures", False):
        overrides["figures"] = False
    return replace(config, **overrides) if overrides else config


def _write_suite(document, config):
    out = Path(config.output)
    if config.output_format == "csv":
        out.write_text(suite_document_csv(document))
    else:
        out.write_text(suite_document_json(document))
    if config.figures:
        from .plotting import render_margin_figure
        render_margin_figure(document["reports"],
                             out.with_name(out.stem + "_margins.png"),
                             title=f"{config.family} suite margins")
    return out


def _cmd_suite(args):
    config = _load_config(args.config, args)
    document, code = run_suite(config)
    out = _write_suite(document, config)
    counts = {}
    for entry in document["reports"]:
        counts[entry["status"]] = counts.get(entry["status"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"wrote {out} ({summary})")
    return code


def _cmd_check(args):
    config = _load_config(args.config, args)
    if args.theorem not in THEOREM_IDS:
        raise ConfigError("--theorem", f"unknown theorem id {args.theorem!r}")
    config = replace(config, theorems=(args.theorem,))
    document, code = run_suite(config)
    for entry in document["reports"]:
        line = f"{entry['theorem_id']}: {entry['status']}"
        if entry["lhs"] is not None:
            line += (f" (lhs={entry['lhs']:.6e}, rhs={entry['rhs']:.6e}, "
                     f"margin={entry['margin']:.6e})")
        if entry.get("error"):
            line += f" [{entry['error']}]"
        print(line)
    if args.out:
        _write_suite(document, config)
    return code


def _cmd_profile(args):
    config = _load_config(args.config, args)
    combo = next(_combos(config))
    space = _build_space(config, combo)
    model = ModelParams(n=combo["n"], k=combo["k"], H=combo["H"],
                        omega=space.omega)
    if model.H > 0.0:
        top = min(0.98 * space.L, 0.98 * model.period)
    else:
        top = 0.98 * space.L
    r_min = config.grid_r_min if config.grid_r_min is not None else space.r_pole
    gamma = config.grid_gamma if config.grid_gamma is not None else 1.0
    grid = RadialGrid(r_min, top, m=config.grid_m, gamma=gamma)
    out = Path(config.output if not args.out else args.out)
    table = emit_profiles(space, model, grid, out)
    print(f"wrote {out} ({len(table['r'])} rows)")
    if config.figures:
        from .plotting import render_profile_figure
        fig_path = out.with_suffix(".png")
        render_profile_figure(table, fig_path, title=space.name)
        print(f"wrote {fig_path}")
    return 0


def _cmd_constants(args):
    model = ModelParams(n=args.n, k=args.k, H=args.H, omega=args.omega)
    request = ConstantRequest(model=model, p=args.p, R=args.R, beta=args.beta)
    values = {
        "ball_constant": ball_comparison_constant(request),
        "area_constant": area_comparison_constant(request),
        "doubling_epsilon": doubling_threshold(request),
        "diameter_threshold": diameter_threshold(model, args.r if args.r else args.R),
    }
    if None not in (args.r1, args.r2, args.R1, args.R2):
        annulus_req = ConstantRequest(model=model, p=args.p, R=args.R2,
                                      r1=args.r1, r2=args.r2, R1=args.R1,
                                      R2=args.R2)
        values["annulus_constant"] = annulus_comparison_constant(annulus_req)
    values = {name: float(value) for name, value in values.items()}
    for name, value in values.items():
        print(f"{name} = {value!r}")
    if args.out:
        Path(args.out).write_text(json.dumps(values, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvcomp",
        description="Curvature-comparison checks on weighted rotationally "
                    "symmetric spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a key-value config file")
    common.add_argument("--out", help="output path (overrides config)")
    common.add_argument("--format", choices=("json", "csv"),
                        help="suite output format (overrides config)")
    common.add_argument("--tol", type=float, help="pass tolerance override")
    common.add_argument("--grid-m", type=int, dest="grid_m",
                        help="grid interval count override")
    common.add_argument("--no-figures", action="store_true", dest="no_figures",
                        help="skip companion figure rendering")

    p_suite = sub.add_parser("suite", parents=[common],
                             help="run every configured check")
    p_suite.set_defaults(func=_cmd_suite)

    p_check = sub.add_parser("check", parents=[common],
                             help="run a single theorem check")
    p_check.add_argument("--theorem", required=True,
                         help=f"one of {', '.join(THEOREM_IDS)}")
    p_check.set_defaults(func=_cmd_check)

    p_profile = sub.add_parser("profile", parents=[common],
                               help="emit radial profile CSV (and figure)")
    p_profile.set_defaults(func=_cmd_profile)

    p_const = sub.add_parser("constants",
                             help="print comparison constants for one model")
    p_const.add_argument("--n", type=int, required=True)
    p_const.add_argument("--k", type=float, required=True)
    p_const.add_argument("--H", type=float, required=True)
    p_const.add_argument("--p", type=float, required=True)
    p_const.add_argument("--R", type=float, required=True)
    p_const.add_argument("--r", type=float, help="radius for the diameter threshold")
    p_const.add_argument("--beta", type=float, default=2.0)
    p_const.add_argument("--omega", type=float)
    p_const.add_argument("--r1", type=float)
    p_const.add_argument("--r2", type=float)
    p_const.add_argument("--R1", type=float)
    p_const.add_argument("--R2", type=float)
    p_const.add_argument("--out")
    p_const.set_defaults(func=_cmd_constants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except CurvCompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
