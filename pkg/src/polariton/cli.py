"""Command-line front end.

Every subcommand reads its settings from built-in defaults, then from the
matching section of an optional JSON ``--config`` document, then from
command-line flags.  Tabular results are CSV (12 significant digits, LF line
endings); ``--svg`` additionally renders a figure.

Exit codes: 0 success, 1 configuration error, 2 numerical failure, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import dispersion as disp
from . import kinetics, params, structure
from .errors import (
    ConfigError,
    NoConvergence,
    NonPositiveCharge,
    QuadratureFailure,
    UnstableMode,
    ZeroFrequency,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

SCHEMAS = {
    "dispersion": ["k_hat", "omega_sq", "omega", "growth", "unstable_rate"],
    "structure": ["k_hat", "S"],
    "correlation": ["r", "g", "err"],
    "phase": ["D_hat", "omega_d_hat", "kind"],
    "verify": ["k_hat", "omega_analytic", "re_kinetic", "im_kinetic", "rel_dev", "in_regime"],
}

DEFAULTS = {
    "params": {"separation": 10.0},
    "dispersion": {
        "D_hat": 2.0, "omega_d": [0.0, 1.9, 1.99, 2.2],
        "k_min": 0.01, "k_max": 3.0, "nk": 300, "k_grid": None,
    },
    "roton": {
        "D_hat": 2.0, "omega_d": [0.0, 1.9, 1.99, 2.0, 2.2],
        "k_min": 1e-3, "k_max": 3.0, "grid_n": 2000, "tol": 1e-9,
    },
    "structure": {
        "D_hat": 2.0, "omega_d": [0.0, 1.9, 1.99],
        "k_min": 0.0, "k_max": 3.0, "nk": 301, "k_grid": None,
        "form": "classical", "theta": 0.0,
    },
    "correlation": {
        "D_hat": 2.0, "omega_d": [0.0, 1.9, 1.99],
        "r_min": 0.5, "r_max": 40.0, "nr": 400, "r_grid": None,
        "quad_k_max": 50.0, "dk": 1e-3, "tol": 1e-4,
    },
    "verify": {
        "D_hat": 2.0, "omega_d": [0.0], "k_list": [0.05, 0.1, 0.2],
        "tol": 1e-10, "threshold": 0.05,
    },
    "phase": {
        "D_range": [0.5, 10.0], "wd_range": [0.0, 3.0], "nD": 20, "nwd": 31,
        "grid_n": 2000,
    },
}

PHYSICAL_FLAGS = {
    "sigma_R": "--sigma-R", "sigma_L": "--sigma-L", "intensity": "--intensity",
    "density": "--density", "tau": "--tau", "mass": "--mass",
    "temperature": "--temperature", "lambda_light": "--lambda-light",
    "cloud_size": "--cloud-size", "intensity_scale": "--intensity-scale",
}


class IOFailure(Exception):
    pass


# ---------------------------------------------------------------- formatting

def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def json_number(x):
    x = float(x)
    return None if not math.isfinite(x) else float(f"{x:.12g}")


def csv_text(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_text(path, text):
    try:
        d = os.path.dirname(os.path.abspath(path))
        os.makedirs(d, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def series_path(path, wd):
    stem, ext = os.path.splitext(path)
    return f"{stem}_wd{wd:g}{ext or '.csv'}"


def emit_series(command, out, blocks):
    """``blocks``: list of ``(omega_d, rows)``; one file per series when >1."""
    header = SCHEMAS[command]
    if out is None:
        parts = []
        for wd, rows in blocks:
            if len(blocks) > 1:
                parts.append(f"# omega_d_hat={wd:g}\n")
            parts.append(csv_text(header, rows))
        sys.stdout.write("".join(parts))
        return []
    if len(blocks) == 1:
        write_text(out, csv_text(header, blocks[0][1]))
        return [out]
    paths = []
    for wd, rows in blocks:
        p = series_path(out, wd)
        write_text(p, csv_text(header, rows))
        paths.append(p)
    return paths


def render(plot_fn, *args):
    try:
        plot_fn(*args)
    except OSError as exc:
        raise IOFailure(f"cannot write figure {args[-1]}: {exc}") from exc


# ---------------------------------------------------------------- settings

def _as_float(name, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{name} must be a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ConfigError(f"{name} must be finite")
    return v


def _as_int(name, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
        raise ConfigError(f"{name} must be an integer, got {v!r}")
    return int(v)


def _as_list(name, v):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        v = [v]
    if not isinstance(v, (list, tuple)):
        raise ConfigError(f"{name} must be a list of numbers")
    return [_as_float(name, x) for x in v]


def parse_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse number list {text!r}") from exc


def load_config(path, command):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    if "command" not in data:
        if command == "params":
            return {"physical": data}
        raise ConfigError(f"{path}: missing 'command' field")
    if data["command"] != command:
        raise ConfigError(f"{path}: config is for {data['command']!r}, not {command!r}")
    section = data.get(command, {})
    if not isinstance(section, dict):
        raise ConfigError(f"{path}: section {command!r} must be an object")
    return section


def settings(args):
    cfg = dict(DEFAULTS[args.command])
    section = load_config(args.config, args.command)
    allowed = set(cfg) | ({"physical"} | set(PHYSICAL_FLAGS) if args.command == "params" else set())
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) for {args.command}: {', '.join(unknown)}")
    cfg.update(section)

    flags = {
        "omega_d": getattr(args, "omega_d", None),
        "D_hat": getattr(args, "d0", None),
        "tol": getattr(args, "tol", None),
        "k_min": getattr(args, "kmin", None),
        "nk": getattr(args, "nk", None),
        "k_grid": getattr(args, "k_grid", None),
        "k_list": getattr(args, "k_list", None),
        "r_min": getattr(args, "rmin", None),
        "r_max": getattr(args, "rmax", None),
        "nr": getattr(args, "nr", None),
        "dk": getattr(args, "dk", None),
        "form": getattr(args, "form", None),
        "theta": getattr(args, "theta", None),
        "D_range": getattr(args, "d_range", None),
        "wd_range": getattr(args, "wd_range", None),
        "nD": getattr(args, "nd", None),
        "nwd": getattr(args, "nwd", None),
        "grid_n": getattr(args, "grid_n", None),
        "threshold": getattr(args, "threshold", None),
        "separation": getattr(args, "separation", None),
    }
    kmax = getattr(args, "kmax", None)
    if kmax is not None:
        flags["quad_k_max" if args.command == "correlation" else "k_max"] = kmax
    for key, value in flags.items():
        if value is not None and key in cfg:
            cfg[key] = value
    if args.command == "params":
        for key in PHYSICAL_FLAGS:
            value = getattr(args, key, None)
            if value is not None:
                cfg[key] = value
    return cfg


def reduced(cfg, wd):
    D = _as_float("D_hat", cfg["D_hat"])
    try:
        return params.ReducedParams(D, wd, _as_float("theta", cfg.get("theta", 0.0)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def omega_d_list(cfg):
    wds = _as_list("omega_d", cfg["omega_d"])
    if not wds:
        raise ConfigError("omega_d list is empty")
    if any(w < 0 for w in wds):
        raise ConfigError("omega_d values must be >= 0")
    return wds


def k_grid(cfg, allow_zero=False):
    if cfg.get("k_grid") is not None:
        k = np.array(_as_list("k_grid", cfg["k_grid"]))
    else:
        lo, hi = _as_float("k_min", cfg["k_min"]), _as_float("k_max", cfg["k_max"])
        n = _as_int("nk", cfg["nk"])
        if n < 1 or hi < lo or (n > 1 and hi == lo):
            raise ConfigError("k grid needs nk >= 1 and k_max > k_min")
        k = np.linspace(lo, hi, n) if n > 1 else np.array([lo])
    if k.size and (np.any(k < 0) or (not allow_zero and np.any(k == 0))):
        raise ConfigError("k grid values must be " + ("non-negative" if allow_zero else "positive"))
    if k.size > 1 and np.any(np.diff(k) <= 0):
        raise ConfigError("k grid must be strictly increasing")
    return k


# ---------------------------------------------------------------- commands

def cmd_params(args, cfg):
    physical = dict(cfg.get("physical", {}))
    physical.update({k: cfg[k] for k in PHYSICAL_FLAGS if k in cfg})
    p = params.PhysicalParams.from_mapping(physical)
    separation = _as_float("separation", cfg["separation"])
    scales = params.derive_scales(p)
    rp = params.reduce(p)
    report = params.check_hierarchy(p, separation)

    lines = ["Derived scales (SI)"]
    units = {"Q_eff": "", "omega_p": "rad/s", "v_th": "m/s", "u_s": "m/s", "lambda_D": "m",
             "mfp": "m", "D0": "m^2/s", "ell_d": "m", "omega_d": "rad/s"}
    for name, unit in units.items():
        lines.append(f"  {name:<9} = {fmt(getattr(scales, name))} {unit}".rstrip())
    lines.append("Reduced parameters")
    lines.append(f"  D_hat       = {fmt(rp.D_hat)}")
    lines.append(f"  omega_d_hat = {fmt(rp.omega_d_hat)}")
    lines.append(f"  theta       = {fmt(rp.theta)}")
    lines.append(f"Length hierarchy lambda << mfp << a << L (separation {fmt(separation)})")
    for (name, value), ok in zip(report.ratios, report.passes):
        lines.append(f"  {name:<10} = {fmt(value):<14} {'ok' if ok else 'FAIL'}")
    lines.append(f"  overall: {'ok' if report.overall else 'FAIL'}")
    sys.stdout.write("\n".join(lines) + "\n")
    if not report.overall:
        print("warning: diffusive-light hierarchy not satisfied", file=sys.stderr)

    echo = {
        "derived_scales": {k: json_number(getattr(scales, k)) for k in units},
        "reduced_params": {"D_hat": json_number(rp.D_hat),
                           "omega_d_hat": json_number(rp.omega_d_hat),
                           "theta": json_number(rp.theta)},
        "validity": {"separation": separation,
                     "ratios": {n: json_number(v) for n, v in report.ratios},
                     "passes": {n: ok for (n, _), ok in zip(report.ratios, report.passes)},
                     "overall": report.overall},
    }
    text = json.dumps(echo, indent=2, sort_keys=True) + "\n"
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dispersion(args, cfg):
    k = k_grid(cfg)
    blocks, series = [], []
    for wd in omega_d_list(cfg):
        rp = reduced(cfg, wd)
        pts = disp.spectrum(rp, k)
        blocks.append((wd, [(p.k_hat, p.omega_sq, p.omega, p.growth, p.unstable_rate) for p in pts]))
        series.append((wd, k, [p.omega for p in pts], [p.growth for p in pts]))
    emit_series("dispersion", args.out, blocks)
    if args.svg:
        from .plotting import plot_dispersion
        render(plot_dispersion, series, args.svg)
    return EXIT_OK


def cmd_roton(args, cfg):
    D = _as_float("D_hat", cfg["D_hat"])
    lo, hi = _as_float("k_min", cfg["k_min"]), _as_float("k_max", cfg["k_max"])
    grid_n = _as_int("grid_n", cfg["grid_n"])
    if not (0 < lo < hi) or grid_n < 16:
        raise ConfigError("roton scan needs 0 < k_min < k_max and grid_n >= 16")
    results = []
    for wd in omega_d_list(cfg):
        r = disp.find_roton(reduced(cfg, wd), (lo, hi), grid_n)
        results.append({
            "omega_d_hat": json_number(wd),
            "kind": str(r.kind),
            "k_rot": json_number(r.k_rot),
            "omega_rot": json_number(r.omega_rot),
            "omega_sq_rot": json_number(r.omega_sq_rot),
            "curvature": json_number(r.curvature),
        })
    report = {
        "D_hat": json_number(D),
        "critical_omega_d": json_number(disp.critical_omega_d(D, _as_float("tol", cfg["tol"]))),
        "k_rot_candidates": {
            "zero_at_criticality_1_over_sqrt_D": json_number(1.0 / math.sqrt(D)),
            "lambda_D_over_ell_d_sq_1_over_D": json_number(1.0 / D),
        },
        "results": results,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_structure(args, cfg):
    k = k_grid(cfg, allow_zero=True)
    form = str(cfg["form"]).lower()
    if form not in ("classical", "coth"):
        raise ConfigError("form must be 'classical' or 'coth'")
    blocks, series, peaks = [], [], []
    for wd in omega_d_list(cfg):
        rp = reduced(cfg, wd)
        try:
            table = structure.structure_table(rp, k, form)
        except UnstableMode as exc:
            raise ConfigError(f"omega_d_hat={wd:g}: {exc}") from exc
        if np.any(table.divergent):
            print(f"warning: omega_d_hat={wd:g}: S diverges at "
                  f"{int(table.divergent.sum())} grid point(s) (reported as inf)", file=sys.stderr)
        blocks.append((wd, list(zip(table.k_hat, table.S))))
        series.append((wd, table.k_hat, table.S))
        if table.S.size:
            i = int(np.argmax(table.S))
            peaks.append({"omega_d_hat": json_number(wd), "S_max": json_number(table.S[i]),
                          "k_at_max": json_number(table.k_hat[i])})
    order = sorted(peaks, key=lambda p: p["omega_d_hat"])
    heights = [p["S_max"] if p["S_max"] is not None else math.inf for p in order]
    meta = {"form": form, "peaks": order,
            "peak_height_nondecreasing_in_omega_d": all(a <= b for a, b in zip(heights, heights[1:]))}
    print(json.dumps(meta, sort_keys=True), file=sys.stderr)
    paths = emit_series("structure", args.out, blocks)
    if paths:
        write_text(os.path.splitext(args.out)[0] + ".meta.json",
                   json.dumps(meta, indent=2, sort_keys=True) + "\n")
    if args.svg:
        from .plotting import plot_structure
        render(plot_structure, series, args.svg)
    return EXIT_OK


def cmd_correlation(args, cfg):
    if cfg.get("r_grid") is not None:
        r = np.array(_as_list("r_grid", cfg["r_grid"]))
    else:
        lo, hi = _as_float("r_min", cfg["r_min"]), _as_float("r_max", cfg["r_max"])
        n = _as_int("nr", cfg["nr"])
        if n < 0 or (n > 1 and hi <= lo):
            raise ConfigError("r grid needs nr >= 0 and r_max > r_min")
        r = np.linspace(lo, hi, n) if n != 1 else np.array([lo])
    if r.size and (np.any(r <= 0) or np.any(np.diff(r) <= 0)):
        raise ConfigError("r grid must be positive and strictly increasing")
    try:
        quad = structure.QuadratureConfig(
            k_max=_as_float("quad_k_max", cfg["quad_k_max"]),
            dk=_as_float("dk", cfg["dk"]),
            tol=_as_float("tol", cfg["tol"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    blocks, series = [], []
    for wd in omega_d_list(cfg):
        rp = reduced(cfg, wd)
        try:
            table = structure.correlation_scan(rp, r, quad)
        except UnstableMode as exc:
            raise ConfigError(f"omega_d_hat={wd:g}: {exc}") from exc
        blocks.append((wd, list(zip(table.r, table.g, table.quadrature_error))))
        series.append((wd, table.r, table.g))
    emit_series("correlation", args.out, blocks)
    if args.svg:
        from .plotting import plot_correlation
        render(plot_correlation, series, args.svg)
    return EXIT_OK


def cmd_verify(args, cfg):
    ks = _as_list("k_list", cfg["k_list"])
    if not ks:
        raise ConfigError("k_list is empty")
    if any(k <= 0 for k in ks):
        raise ConfigError("k_list values must be > 0")
    wd = omega_d_list(cfg)[0]
    rp = reduced(cfg, wd)
    tol = _as_float("tol", cfg["tol"])
    threshold = _as_float("threshold", cfg["threshold"])
    rows, ok = [], True
    for k in ks:
        w2 = disp.omega_sq(k, rp)
        w = math.sqrt(w2) if w2 > 0 else float("nan")
        in_regime = w2 > 0 and kinetics.in_expansion_regime(k, w)
        try:
            root = kinetics.solve_kinetic_root(k, w if w2 > 0 else 0.1j, rp, tol=tol)
            re, im = root.re, root.im
        except NoConvergence:
            if in_regime:
                raise
            re = im = float("nan")
        dev = abs(re - w) / w if w2 > 0 else float("nan")
        if in_regime and not dev <= threshold:
            ok = False
        rows.append((k, w, re, im, dev, in_regime))

    lines = [f"{'k_hat':>10} {'omega_an':>14} {'Re Omega_kin':>14} {'Im Omega_kin':>14} "
             f"{'rel_dev':>12}  status"]
    for k, w, re, im, dev, reg in rows:
        status = ("pass" if dev <= threshold else "FAIL") if reg else "outside expansion regime"
        lines.append(f"{fmt(k):>10} {fmt(w):>14} {fmt(re):>14} {fmt(im):>14} {fmt(dev):>12}  {status}")
    lines.append(f"summary: {'PASS' if ok else 'FAIL'} (threshold {fmt(threshold)}, "
                 f"omega_d_hat={fmt(wd)}, D_hat={fmt(rp.D_hat)})")
    text = "\n".join(lines) + "\n"
    if args.out:
        write_text(args.out, csv_text(SCHEMAS["verify"], rows))
        sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_phase(args, cfg):
    D_range = _as_list("D_range", cfg["D_range"])
    wd_range = _as_list("wd_range", cfg["wd_range"])
    if len(D_range) != 2 or len(wd_range) != 2:
        raise ConfigError("D_range and wd_range need exactly two values")
    nD, nwd = _as_int("nD", cfg["nD"]), _as_int("nwd", cfg["nwd"])
    try:
        table = disp.phase_scan(D_range, wd_range, nD, nwd, _as_int("grid_n", cfg["grid_n"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(D, wd, str(kind)) for D, wd, kind in table.rows()]
    text = csv_text(SCHEMAS["phase"], rows)
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    for j, D in enumerate(table.D_values):
        b = table.first_unstable(j)
        print(f"D_hat={fmt(D)}: first non-stable omega_d_hat = {fmt(b) if b is not None else 'none'}",
              file=sys.stderr)
    if args.svg:
        from .plotting import plot_phase
        render(plot_phase, table, args.svg)
    return EXIT_OK


COMMANDS = {
    "params": cmd_params,
    "dispersion": cmd_dispersion,
    "roton": cmd_roton,
    "structure": cmd_structure,
    "correlation": cmd_correlation,
    "verify": cmd_verify,
    "phase": cmd_phase,
}


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser():
    parser = _Parser(prog="polariton", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, svg=True):
        p.add_argument("--config", help="JSON config with a 'command' field and per-command sections")
        p.add_argument("--out", help="output file (default: stdout)")
        if svg:
            p.add_argument("--svg", help="also render a figure (format from extension)")

    def reduced_flags(p):
        p.add_argument("--omega-d", dest="omega_d", type=parse_list, help="comma-separated omega_d/omega_p")
        p.add_argument("--d0", type=float, help="D0 in units of lambda_D^2 omega_p")
        p.add_argument("--tol", type=float)

    p = sub.add_parser("params", help="derive scales from SI parameters")
    common(p, svg=False)
    for key, flag in PHYSICAL_FLAGS.items():
        p.add_argument(flag, dest=key, type=float)
    p.add_argument("--separation", type=float, help="factor standing for '<<' (default 10)")

    for name, helptext in [("dispersion", "tabulate omega(k) and gamma(k)"),
                           ("structure", "tabulate S(k)")]:
        p = sub.add_parser(name, help=helptext)
        common(p)
        reduced_flags(p)
        p.add_argument("--kmin", type=float)
        p.add_argument("--kmax", type=float)
        p.add_argument("--nk", type=int)
        p.add_argument("--k-grid", dest="k_grid", type=parse_list)
        if name == "structure":
            p.add_argument("--form", choices=["classical", "coth"])
            p.add_argument("--theta", type=float)

    p = sub.add_parser("roton", help="locate roton minima and the critical omega_d")
    common(p, svg=False)
    reduced_flags(p)
    p.add_argument("--kmin", type=float)
    p.add_argument("--kmax", type=float)
    p.add_argument("--grid-n", dest="grid_n", type=int)

    p = sub.add_parser("correlation", help="tabulate g(r)")
    common(p)
    reduced_flags(p)
    p.add_argument("--rmin", type=float)
    p.add_argument("--rmax", type=float)
    p.add_argument("--nr", type=int)
    p.add_argument("--kmax", type=float, help="quadrature cutoff in 1/lambda_D")
    p.add_argument("--dk", type=float)

    p = sub.add_parser("verify", help="compare the fluid branch with kinetic roots")
    common(p, svg=False)
    reduced_flags(p)
    p.add_argument("--k-list", dest="k_list", type=parse_list)
    p.add_argument("--threshold", type=float)

    p = sub.add_parser("phase", help="stability classification over (D_hat, omega_d)")
    common(p)
    p.add_argument("--d-range", dest="d_range", type=parse_list)
    p.add_argument("--wd-range", dest="wd_range", type=parse_list)
    p.add_argument("--nd", type=int)
    p.add_argument("--nwd", type=int)
    p.add_argument("--grid-n", dest="grid_n", type=int)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = settings(args)
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, NonPositiveCharge, UnstableMode, ZeroFrequency) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoConvergence, QuadratureFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except IOFailure as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
