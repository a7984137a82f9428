"""Command-line driver: analyze, spectrum, wavefunction, verify, sweep.

Exit codes follow the scripting contract: 0 success, 1 invalid input,
2 verification failure.  All delimited output funnels through the %.17g
formatting gate, so identical configurations produce byte-identical files.
Precedence for every setting is flag > config file > default; the config
file is a plain key=value table.  The only environment hook is NHHO_OUT,
which rebases relative output paths.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import report
from .hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    BRANCH_VARIATIONAL,
    TransformParams,
    branch_decomposition,
    build_hamiltonian,
    hermiticity_defect,
    omega_u_zero,
    omega_v_zero,
    omega_variational,
    u_zero_roots,
    v_zero_roots,
    verify_canonical_commutator,
)
from .ladder import LadderPolynomial
from .perturbation import (
    LOWERING,
    RAISING,
    build_series_lowering,
    build_series_raising,
    rs_corrections,
    series_by_recursion,
)
from .position_space import HermiteBasisFunction, default_grid, eval_series_position
from .spectral import (
    FockMatrix,
    classify_structure,
    expectation_consistency,
    triangular_spectrum,
)
from .verify import FAULT_FLIP_V, all_passed, run_verification

BRANCH_CUSTOM = "custom"
_BRANCHES = (BRANCH_U_ZERO, BRANCH_V_ZERO, BRANCH_VARIATIONAL, BRANCH_CUSTOM)

# parameter points the bare `verify` command walks through; covers both signs,
# the Hermitian line lam = -beta, and the trivial origin
VERIFY_SAMPLE = ((0.5, 0.2), (0.2, 0.5), (-0.6, 0.3), (0.3, -0.7), (0.4, -0.4), (0.0, 0.0))

_DEFAULTS = {
    "lam": None,
    "beta": None,
    "n": 0,
    "order": 10,
    "dim": 64,
    "branch": BRANCH_U_ZERO,
    "omega": None,
    "grid_min": None,
    "grid_max": None,
    "grid_points": 401,
    "fmt": "csv",
    "output": None,
    "plot": False,
    "lam_min": -0.8,
    "lam_max": 0.8,
    "lam_steps": 5,
    "beta_min": -0.8,
    "beta_max": 0.8,
    "beta_steps": 5,
}

# config-file key -> (namespace destination, converter)
_CONFIG_SCHEMA = {
    "lambda": ("lam", float),
    "beta": ("beta", float),
    "n": ("n", int),
    "order": ("order", int),
    "orders": ("order", int),
    "dim": ("dim", int),
    "branch": ("branch", str),
    "omega": ("omega", float),
    "grid-min": ("grid_min", float),
    "grid-max": ("grid_max", float),
    "grid-points": ("grid_points", int),
    "format": ("fmt", str),
    "output": ("output", str),
    "plot": ("plot", None),
    "lambda-min": ("lam_min", float),
    "lambda-max": ("lam_max", float),
    "lambda-steps": ("lam_steps", int),
    "beta-min": ("beta_min", float),
    "beta-max": ("beta_max", float),
    "beta-steps": ("beta_steps", int),
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command invocation."""

    lam: float | None
    beta: float | None
    n: int
    order: int
    dim: int
    branch: str
    omega: float | None
    grid_min: float | None
    grid_max: float | None
    grid_points: int
    fmt: str
    output: str | None
    plot: bool
    lam_min: float
    lam_max: float
    lam_steps: int
    beta_min: float
    beta_max: float
    beta_steps: int


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract reserves 2 for verify."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print("error: %s" % message, file=sys.stderr)
        raise SystemExit(1)


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("not a boolean: %r" % text)


def _read_config_file(path: str) -> dict:
    """key=value lines, # comments; keys mirror the long flag names."""
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("config line %r is not key=value" % raw.strip())
        key, text = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_SCHEMA:
            raise ValueError("unknown config key %r" % key)
        dest, convert = _CONFIG_SCHEMA[key]
        values[dest] = _parse_bool(text) if convert is None else convert(text)
    return values


def _resolve(args: argparse.Namespace) -> RunConfig:
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key, default in _DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
        elif key in file_values:
            merged[key] = file_values[key]
        else:
            merged[key] = default
    cfg = RunConfig(**merged)
    if cfg.branch not in _BRANCHES:
        raise ValueError("unknown branch %r; choose one of %s" % (cfg.branch, ", ".join(_BRANCHES)))
    if cfg.fmt not in ("csv", "json"):
        raise ValueError("unknown format %r; choose csv or json" % cfg.fmt)
    if cfg.n < 0:
        raise ValueError("level index must be nonnegative")
    if cfg.order < 1:
        raise ValueError("order must be at least 1")
    if cfg.dim < 2:
        raise ValueError("truncation size must be at least 2")
    return cfg


def _require_params(cfg: RunConfig) -> TransformParams:
    if cfg.lam is None or cfg.beta is None:
        raise ValueError("both --lambda and --beta are required")
    return TransformParams(lam=cfg.lam, beta=cfg.beta)


def _resolve_omega(cfg: RunConfig, params: TransformParams) -> float:
    if cfg.branch == BRANCH_U_ZERO:
        return omega_u_zero(params)
    if cfg.branch == BRANCH_V_ZERO:
        return omega_v_zero(params)
    if cfg.branch == BRANCH_VARIATIONAL:
        return omega_variational(params)
    if cfg.omega is None:
        raise ValueError("custom branch requires --omega")
    return cfg.omega


def _out_path(cfg_output: str) -> Path:
    path = Path(cfg_output)
    base = os.environ.get("NHHO_OUT")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(cfg: RunConfig, text: str) -> Path | None:
    if cfg.output is None:
        sys.stdout.write(text)
        return None
    return report.write_text(_out_path(cfg.output), text)


def _figure_path(cfg: RunConfig, command: str) -> Path:
    if cfg.output is not None:
        out = _out_path(cfg.output)
        fig = out.with_suffix(".png")
        # keep the figure from clobbering a .png-named data file
        if fig == out:
            fig = out.with_name(out.stem + "-plot.png")
        return fig
    base = Path(os.environ.get("NHHO_OUT") or ".")
    return base / ("nhho-%s.png" % command)


def cmd_analyze(args) -> int:
    cfg = _resolve(args)
    params = _require_params(cfg)
    omega = _resolve_omega(cfg, params)
    dec = build_hamiltonian(params, omega)
    comm = verify_canonical_commutator(params, omega)
    comm_defect = (comm - LadderPolynomial.identity(1j)).max_abs_coeff()
    pairs = [
        ("lambda", params.lam),
        ("beta", params.beta),
        ("f", params.f),
        ("omega1", omega_u_zero(params)),
        ("omega2", omega_v_zero(params)),
        ("omega_v", omega_variational(params)),
        ("omega1_other_root", u_zero_roots(params)[1]),
        ("omega2_other_root", v_zero_roots(params)[1]),
        ("omega", omega),
        ("h_d", dec.h_d),
        ("u", dec.u),
        ("v", dec.v),
        ("coupling_denominator", dec.denom),
        ("hermiticity_defect", hermiticity_defect(params, omega).max_abs_coeff()),
        ("canonical_commutator_defect", comm_defect),
    ]
    if cfg.fmt == "json":
        payload = {"command": "analyze"}
        payload.update(pairs)
        text = report.render_json(payload)
    else:
        text = report.render_csv(["quantity", "value"], pairs)
    _emit(cfg, text)
    return 0


def cmd_spectrum(args) -> int:
    cfg = _resolve(args)
    params = _require_params(cfg)
    if cfg.branch not in (BRANCH_U_ZERO, BRANCH_V_ZERO):
        raise ValueError("spectrum extraction requires triangular branch, got %s" % cfg.branch)
    dec = branch_decomposition(params, cfg.branch)
    matrix = FockMatrix.from_decomposition(dec, cfg.dim)
    tag = classify_structure(matrix)
    energies = triangular_spectrum(matrix)
    levels = np.arange(cfg.dim)
    deviations = energies - (levels + 0.5)
    rows = [
        (int(n), energies[n], deviations[n], tag) for n in range(cfg.dim)
    ]
    if cfg.fmt == "json":
        text = report.render_json(
            {
                "command": "spectrum",
                "branch": cfg.branch,
                "omega": dec.omega,
                "structure": tag,
                "levels": [
                    {"n": int(n), "energy": energies[n], "deviation": deviations[n]}
                    for n in levels
                ],
            }
        )
    else:
        text = report.render_csv(["n", "energy", "deviation", "structure"], rows)
    _emit(cfg, text)
    if cfg.plot:
        report.save_spectrum_figure(
            _figure_path(cfg, "spectrum"),
            levels,
            energies,
            "spectrum on %s branch (omega = %.6g)" % (cfg.branch, dec.omega),
        )
    return 0


def _wavefunction_series(cfg: RunConfig, params: TransformParams):
    if cfg.branch == BRANCH_U_ZERO:
        closed = build_series_raising(params, cfg.n, cfg.order)
        recursive = series_by_recursion(params, cfg.n, cfg.order, RAISING)
    elif cfg.branch == BRANCH_V_ZERO:
        closed = build_series_lowering(params, cfg.n)
        recursive = series_by_recursion(params, cfg.n, cfg.order, LOWERING)
    else:
        raise ValueError(
            "wavefunction series exists on the selection branches only (u0 or v0), got %s"
            % cfg.branch
        )
    return closed, recursive


def cmd_wavefunction(args) -> int:
    cfg = _resolve(args)
    params = _require_params(cfg)
    closed, recursive = _wavefunction_series(cfg, params)
    omega = closed.omega

    coeff_rows = []
    for k, (level, c_closed) in enumerate(zip(closed.levels(), closed.coeffs)):
        c_rec = recursive.coeffs[k]
        coeff_rows.append((k, int(level), c_closed, c_rec, abs(c_closed - c_rec)))

    lo = cfg.grid_min if cfg.grid_min is not None else -8.0 / math.sqrt(omega)
    hi = cfg.grid_max if cfg.grid_max is not None else 8.0 / math.sqrt(omega)
    if not lo < hi:
        raise ValueError("grid bounds must satisfy min < max")
    if cfg.grid_points < 2:
        raise ValueError("grid needs at least 2 points")
    xs = np.linspace(lo, hi, cfg.grid_points)
    series_vals = eval_series_position(closed, xs)
    base_vals = HermiteBasisFunction(cfg.n, omega)(xs)
    grid_rows = list(zip(xs, series_vals, base_vals))

    coeff_header = ["k", "level", "closed_form", "recursion", "difference"]
    grid_header = ["x", "series", "basis"]
    if cfg.fmt == "json":
        text = report.render_json(
            {
                "command": "wavefunction",
                "branch": cfg.branch,
                "n": cfg.n,
                "omega": omega,
                "coefficients": [
                    dict(zip(coeff_header, row)) for row in coeff_rows
                ],
                "grid": [dict(zip(grid_header, row)) for row in grid_rows],
            }
        )
        _emit(cfg, text)
    else:
        coeff_text = report.render_csv(coeff_header, coeff_rows)
        grid_text = report.render_csv(grid_header, grid_rows)
        if cfg.output is None:
            sys.stdout.write(coeff_text)
            sys.stdout.write("\n")
            sys.stdout.write(grid_text)
        else:
            out = _out_path(cfg.output)
            suffix = out.suffix or ".csv"
            report.write_text(out.with_name(out.stem + "-coefficients" + suffix), coeff_text)
            report.write_text(out.with_name(out.stem + "-grid" + suffix), grid_text)
    if cfg.plot:
        report.save_curves_figure(
            _figure_path(cfg, "wavefunction"),
            xs,
            [("series", series_vals), ("level-%d basis" % cfg.n, base_vals)],
            "x",
            "amplitude",
            "level %d on %s branch" % (cfg.n, cfg.branch),
        )
    return 0


def cmd_verify(args) -> int:
    cfg = _resolve(args)
    if (cfg.lam is None) != (cfg.beta is None):
        raise ValueError("give both --lambda and --beta, or neither")
    if cfg.lam is None:
        points = [TransformParams(lam=a, beta=b) for a, b in VERIFY_SAMPLE]
    else:
        points = [TransformParams(lam=cfg.lam, beta=cfg.beta)]

    fault = FAULT_FLIP_V if args.inject_fault else None
    rows = []
    ok = True
    for params in points:
        results = run_verification(
            params, n=cfg.n, orders=cfg.order, dim=cfg.dim, fault=fault
        )
        ok = ok and all_passed(results)
        for res in results:
            rows.append(
                (
                    params.lam,
                    params.beta,
                    res.name,
                    "pass" if res.passed else "FAIL",
                    res.measured,
                    res.tolerance,
                    res.detail,
                )
            )

    header = ["lambda", "beta", "check", "status", "measured", "tolerance", "detail"]
    if cfg.fmt == "json":
        text = report.render_json(
            {
                "command": "verify",
                "passed": ok,
                "results": [dict(zip(header, row)) for row in rows],
            }
        )
    else:
        text = report.render_csv(header, rows)
    _emit(cfg, text)
    if not ok:
        for row in rows:
            if row[3] == "FAIL":
                print(
                    "verification failure: %s at lambda=%s beta=%s: measured %s > tolerance %s"
                    % (row[2], report.format_number(row[0]), report.format_number(row[1]),
                       report.format_number(row[4]), report.format_number(row[5])),
                    file=sys.stderr,
                )
        return 2
    return 0


def cmd_sweep(args) -> int:
    cfg = _resolve(args)
    if cfg.lam_steps < 1 or cfg.beta_steps < 1:
        raise ValueError("sweep needs at least one step per axis")
    lams = np.linspace(cfg.lam_min, cfg.lam_max, cfg.lam_steps)
    betas = np.linspace(cfg.beta_min, cfg.beta_max, cfg.beta_steps)

    rows = []
    f_grid = np.empty((len(lams), len(betas)))
    for i, lam in enumerate(lams):
        for j, beta in enumerate(betas):
            params = TransformParams(lam=float(lam), beta=float(beta))
            dec_u0 = branch_decomposition(params, BRANCH_U_ZERO)
            dec_v0 = branch_decomposition(params, BRANCH_V_ZERO)
            max_u0 = rs_corrections(dec_u0, cfg.n, cfg.order).max_abs_correction()
            max_v0 = rs_corrections(dec_v0, cfg.n, cfg.order).max_abs_correction()
            routes = expectation_consistency(params, cfg.n, cfg.order)
            consistency = max(abs(r - (cfg.n + 0.5)) for r in routes)
            f_grid[i, j] = params.f
            rows.append(
                (
                    float(lam),
                    float(beta),
                    omega_u_zero(params),
                    omega_v_zero(params),
                    params.f,
                    max_u0,
                    max_v0,
                    consistency,
                )
            )

    header = [
        "lambda",
        "beta",
        "omega1",
        "omega2",
        "f",
        "max_correction_u0",
        "max_correction_v0",
        "expectation_deviation",
    ]
    if cfg.fmt == "json":
        text = report.render_json(
            {
                "command": "sweep",
                "rows": [dict(zip(header, row)) for row in rows],
            }
        )
    else:
        text = report.render_csv(header, rows)
    _emit(cfg, text)
    if cfg.plot:
        report.save_heatmap_figure(
            _figure_path(cfg, "sweep"),
            lams,
            betas,
            f_grid,
            "f",
            "coupling strength over the parameter plane",
        )
    return 0


def _add_common(sub, *, params=True, level=False, grid=False, fmt=True):
    if params:
        sub.add_argument("--lambda", dest="lam", type=float, help="mixing parameter, |lambda| < 1")
        sub.add_argument("--beta", dest="beta", type=float, help="mixing parameter, |beta| < 1")
    if level:
        sub.add_argument("--n", type=int, help="level index (default 0)")
        sub.add_argument("--order", type=int, help="series/correction depth K (default 10)")
        sub.add_argument("--dim", type=int, help="Fock truncation size (default 64)")
    if grid:
        sub.add_argument("--grid-min", dest="grid_min", type=float, help="left edge of the sample grid")
        sub.add_argument("--grid-max", dest="grid_max", type=float, help="right edge of the sample grid")
        sub.add_argument("--grid-points", dest="grid_points", type=int, help="number of grid samples (default 401)")
    if fmt:
        sub.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format (default csv)")
        sub.add_argument("--output", help="output file (default stdout); relative paths honor NHHO_OUT")
        sub.add_argument("--config", help="key=value config file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="nhho",
        description="Non-Hermitian transformed oscillator: spectra, series, verification.",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")

    p = commands.add_parser("analyze", help="frequencies, couplings, and operator checks at one point")
    _add_common(p)
    p.add_argument("--branch", choices=_BRANCHES, help="frequency selection (default u0)")
    p.add_argument("--omega", type=float, help="frequency for the custom branch")
    p.set_defaults(func=cmd_analyze)

    p = commands.add_parser("spectrum", help="triangular-branch spectrum from the truncated matrix")
    _add_common(p, level=True)
    p.add_argument("--branch", choices=_BRANCHES, help="u0 or v0 (others are rejected)")
    p.add_argument("--plot", action="store_const", const=True, help="render a level diagram next to the output")
    p.set_defaults(func=cmd_spectrum)

    p = commands.add_parser("wavefunction", help="eigenstate series coefficients and grid samples")
    _add_common(p, level=True, grid=True)
    p.add_argument("--branch", choices=_BRANCHES, help="u0 (raising series) or v0 (lowering series)")
    p.add_argument("--plot", action="store_const", const=True, help="render the sampled curves next to the output")
    p.set_defaults(func=cmd_wavefunction)

    p = commands.add_parser("verify", help="run the full identity battery; exit 2 on any failure")
    _add_common(p)
    p.add_argument("--n", type=int, help="level used for series checks (default 0)")
    p.add_argument("--orders", dest="order", type=int, help="correction depth (default 10)")
    p.add_argument("--dim", type=int, help="Fock truncation and quadrature size (default 64)")
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="corrupt one identity on purpose to demonstrate failure detection",
    )
    p.set_defaults(func=cmd_verify)

    p = commands.add_parser("sweep", help="scan the (lambda, beta) rectangle")
    _add_common(p, params=False)
    p.add_argument("--lambda-min", dest="lam_min", type=float, help="default -0.8")
    p.add_argument("--lambda-max", dest="lam_max", type=float, help="default 0.8")
    p.add_argument("--lambda-steps", dest="lam_steps", type=int, help="default 5")
    p.add_argument("--beta-min", dest="beta_min", type=float, help="default -0.8")
    p.add_argument("--beta-max", dest="beta_max", type=float, help="default 0.8")
    p.add_argument("--beta-steps", dest="beta_steps", type=int, help="default 5")
    p.add_argument("--n", type=int, help="level for the correction columns (default 0)")
    p.add_argument("--order", type=int, help="correction depth (default 10)")
    p.add_argument("--plot", action="store_const", const=True, help="render a coupling heatmap next to the output")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
