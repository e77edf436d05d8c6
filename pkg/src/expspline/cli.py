"""Command-line front end.

Exit codes: 0 success, 2 parameters not admissible, 64 usage error,
1 internal or numerical failure.
"""
import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .admissibility import TAU_ADM, check_admissibility
from .bspline import SplineParams, eval_time_domain_array
from .exceptions import ConfigError, DomainError, ExpSplineError, NotAdmissibleError
from .fundamental import (
    DEFAULT_QUADRATURE,
    CurveSample,
    QuadratureSpec,
    compute_coefficients,
    eval_L_series_array,
    fourier_inverter,
    integrand_h_array,
)
from .output import curve_to_csv, curve_to_json, emit, table_to_csv, to_json

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NOT_ADMISSIBLE = 2
EXIT_USAGE = 64

SIGMA_PRESETS = {"sqrt6": math.sqrt(6.0)}
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def decimal(text):
    if not _DECIMAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected a decimal literal, got {text!r}")
    return float(text)


@dataclass
class RunConfig:
    """Validated options of one invocation."""

    command: str
    params: SplineParams = None
    out: str = None
    fmt: str = "csv"
    options: dict = field(default_factory=dict)


def _add_params(sp):
    sp.add_argument("--a", type=decimal, required=True, help="exponential decay a > 0")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--sigma", type=decimal, help="order sigma as a decimal literal")
    g.add_argument("--sigma-preset", choices=sorted(SIGMA_PRESETS), help="named irrational order")


def _add_output(sp):
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def build_parser():
    p = _Parser(prog="expspline", description="Fundamental exponential B-splines of real order.")
    p.add_argument("--version", action="version", version=f"expspline {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("admissible", help="decide admissibility and print the report as JSON")
    _add_params(sp)
    sp.add_argument("--scan-points", type=int, default=4096)
    sp.add_argument("--tolerance", type=decimal, default=TAU_ADM, help="radians from the pi lattice")

    sp = sub.add_parser("eval", help="sample a curve on a uniform grid")
    _add_params(sp)
    _add_output(sp)
    sp.add_argument("--what", choices=("bspline", "L", "L-fourier", "h"), required=True)
    sp.add_argument("--from", dest="x_from", type=decimal, required=True)
    sp.add_argument("--to", dest="x_to", type=decimal, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--window", type=int, default=256, help="coefficient window +-W for --what L")
    sp.add_argument("--M", type=int, default=4096, help="symbol grid size for --what L")
    sp.add_argument("--periods-K", type=int, default=None)
    sp.add_argument("--nodes-per-period", type=int, default=DEFAULT_QUADRATURE.nodes_per_period)
    sp.add_argument("--tail-tol", type=decimal, default=DEFAULT_QUADRATURE.tail_tol)

    sp = sub.add_parser("coeffs", help="coefficient table k,c_k")
    _add_params(sp)
    _add_output(sp)
    sp.add_argument("--window", type=int, default=64, help="report k in [-W, W]")
    sp.add_argument("--M", type=int, default=4096)

    sp = sub.add_parser("reconstruct", help="sampling-series reconstruction from a JSON case")
    _add_output(sp)
    sp.add_argument("--case", required=True, help="JSON file {params, samples, grid}")

    sp = sub.add_parser("figures", help="write the figure sweep CSVs")
    sp.add_argument("--outdir", default="figures")
    return p


def _params(ns):
    sigma = SIGMA_PRESETS[ns.sigma_preset] if ns.sigma_preset else ns.sigma
    try:
        return SplineParams(ns.a, sigma)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command, out=getattr(ns, "out", None), fmt=getattr(ns, "fmt", "csv"))
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "out", "fmt", "a", "sigma", "sigma_preset")}
    cfg.options = opts
    if hasattr(ns, "a"):
        cfg.params = _params(ns)
    if ns.command == "admissible":
        if not cfg.params.sigma > 1.0:
            raise UsageError(f"sigma must exceed 1, got {cfg.params.sigma}")
        if ns.scan_points < 16:
            raise UsageError("--scan-points must be >= 16")
        if not ns.tolerance > 0:
            raise UsageError("--tolerance must be positive")
    if ns.command == "eval":
        if ns.n < 1 or (ns.n > 1 and not ns.x_to > ns.x_from):
            raise UsageError("need --n >= 1 and --to > --from")
        if ns.window < 8:
            raise UsageError("--window must be >= 8")
    if ns.command == "coeffs" and ns.window < 1:
        raise UsageError("--window must be positive")
    return cfg


# ---------------------------------------------------------------- commands


def cmd_admissible(cfg, stdout):
    report = check_admissibility(cfg.params, cfg.options["scan_points"], tolerance=cfg.options["tolerance"])
    stdout.write(to_json(report.to_dict()))
    return EXIT_OK if report.admissible else EXIT_NOT_ADMISSIBLE


def _require(p):
    report = check_admissibility(p)
    if not report.admissible:
        raise NotAdmissibleError(f"sigma={p.sigma} is not admissible for a={p.a}", report)
    return report


def _write_curve(cfg, curve, stdout):
    text = curve_to_json(curve) if cfg.fmt == "json" else curve_to_csv(curve)
    emit(text, cfg.out, stdout)


def cmd_eval(cfg, stdout):
    o, p = cfg.options, cfg.params
    x = np.linspace(o["x_from"], o["x_to"], o["n"])
    what = o["what"]
    meta = {**p.as_dict(), "which": what}
    if what == "bspline":
        vals = eval_time_domain_array(p, x)
    elif what == "h":
        vals = integrand_h_array(p, x)
    elif what == "L":
        report = _require(p)
        model = compute_coefficients(p, o["M"], (-o["window"], o["window"]), report)
        meta.update(M=o["M"], window=[model.k_min, model.k_max])
        vals = eval_L_series_array(model, x)
    else:
        _require(p)
        quad = QuadratureSpec(o["periods_K"], o["nodes_per_period"], o["tail_tol"])
        inv = fourier_inverter(p, quad)
        meta.update(periods_K=inv.periods_K, nodes_per_period=quad.nodes_per_period, tail_bound=inv.tail_bound)
        vals = inv(x)
    _write_curve(cfg, CurveSample(x, vals, meta), stdout)
    return EXIT_OK


def cmd_coeffs(cfg, stdout):
    o, p = cfg.options, cfg.params
    w = o["window"]
    model = compute_coefficients(p, o["M"], (-w, w), _require(p))
    meta = {**p.as_dict(), "M": model.symbol_grid_size_M, "window": [-w, w]}
    rows = [(int(k), float(c)) for k, c in zip(model.ks, model.coeffs)]
    if cfg.fmt == "json":
        text = to_json({"version": __version__, "meta": meta, "coeffs": [{"k": k, "c_k": c} for k, c in rows]})
    else:
        text = table_to_csv(("k", "c_k"), rows, meta)
    emit(text, cfg.out, stdout)
    return EXIT_OK


def cmd_reconstruct(cfg, stdout, stderr):
    from .sampling import case_from_dict, reconstruct

    path = cfg.options["case"]
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        params = SplineParams(data["params"]["a"], data["params"]["sigma"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read case {path}: {exc}") from None
    report = _require(params)
    window = data.get("truncation_window")
    if window:
        lo, hi = int(window[0]), int(window[1])
    else:
        ks = [int(r["k"]) for r in data["samples"]]
        lo, hi = min(ks), max(ks)
    pad = max(256, hi - lo + 64)
    model = compute_coefficients(params, 4096, (-pad, pad), report)
    case = case_from_dict(data, model)
    curve = reconstruct(case)
    _write_curve(cfg, curve, stdout)
    stderr.write(f"max_integer_error: {curve.meta['max_integer_error']:.3e}\n")
    if curve.meta["edge_flagged"]:
        stderr.write(f"edge_flagged: {len(curve.meta['edge_flagged'])} grid points within the margin\n")
    return EXIT_OK


def cmd_figures(cfg, stdout):
    from .figures import write_figures

    for name in write_figures(cfg.options["outdir"]):
        stdout.write(name + "\n")
    return EXIT_OK


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(argv)
        if cfg.command == "reconstruct":
            return cmd_reconstruct(cfg, stdout, stderr)
        handler = {
            "admissible": cmd_admissible,
            "eval": cmd_eval,
            "coeffs": cmd_coeffs,
            "figures": cmd_figures,
        }[cfg.command]
        return handler(cfg, stdout)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except NotAdmissibleError as exc:
        stderr.write(f"not admissible: {exc}\n")
        if exc.report is not None:
            stdout.write(to_json(exc.report.to_dict()))
        return EXIT_NOT_ADMISSIBLE
    except (DomainError, ConfigError) as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ExpSplineError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except Exception as exc:  # noqa: BLE001
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
