"""Command-line front end.

Subcommands cover the whole library: `zeros` (scan and export), `count`
(exact or model counts), `predict`/`compare` (zero estimates against a
catalog), `ratio` (the shared large-E limit), `kp` (Kronig-Penney bands
and integrated DOS), `scatter` (far-field fits), and `kkr` (determinant
roots and chain quantization).

Exit codes: 0 success, 1 usage, 2 numerical failure, 3 I/O.  Data
sections are byte-deterministic: CSV floats use 9 decimal places, JSON
carries full precision, summaries go to stderr or '#' comment lines.
An optional `key = value` config file supplies flag defaults
(flags override); the ZETA_KKR_ZEROS environment variable supplies a
default zero catalog path.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from ._zeros29 import builtin_catalog
from .countmodels import CountingModel, ModelId, compare_catalog, ratio_scan, smooth_count
from .errors import (
    CatalogError,
    ConvergenceError,
    DomainError,
    NonFiniteError,
    ZetaKKRError,
)
from .scatterkkr import (
    KronigPenneyParams,
    QuantizationProblem,
    band_count_integrated_dos,
    band_deviation,
    det_root_index,
    fit_asymptotic,
    integrate_iho,
    kkr_det_roots,
    kp_bands,
    krein_quantization,
    lloyd_integrated_dos,
    verify_w_phase,
)
from .zeroscan import ScanConfig, ZeroCatalog, exact_count, find_zeros, load_catalog, s_function

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3

_METHODS = {
    "rs-smooth": ModelId.RIEMANN_SIEGEL_SMOOTH,
    "polya": ModelId.POLYA,
    "leclair": ModelId.LECLAIR_MUSSARDO,
    "sierra": ModelId.SIERRA,
    "kkr-gamma": ModelId.KKR_GAMMA,
}

_COVERAGE_KEY = "max-height-scanned"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems via exception, not exit(2)."""

    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Output plumbing


def _format_cell(value):
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.9f}"
    return str(value)


def _emit(args, command, columns, rows, params, summary=None):
    """Write one table as CSV (with optional '#' summary line) or as the
    JSON envelope {"meta": ..., "data": ...}."""
    out = sys.stdout if args.output is None else open(args.output, "w", encoding="ascii")
    try:
        if args.format == "json":
            envelope = {
                "meta": {
                    "command": command,
                    "params": params,
                    "version": __version__,
                    "columns": list(columns),
                },
                "data": [list(row) for row in rows],
            }
            if summary:
                envelope["meta"]["summary"] = summary
            json.dump(envelope, out)
            out.write("\n")
        else:
            out.write(",".join(columns) + "\n")
            for row in rows:
                out.write(",".join(_format_cell(v) for v in row) + "\n")
            if summary:
                body = " ".join(f"{k}={_format_cell(v)}" for k, v in summary.items())
                out.write(f"# {body}\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _load_catalog_file(path) -> ZeroCatalog:
    """Accept either the zero-table format or the `n,t` CSV the `zeros`
    subcommand writes (both may carry a coverage comment)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.readlines()
    is_csv = any(line.strip() == "n,t" for line in lines[:5])
    if not is_csv:
        return load_catalog(path)
    heights = []
    coverage = None
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith(_COVERAGE_KEY):
                # the zeros CSV writes 'key=value', the table writer 'key: value'
                coverage = float(body[len(_COVERAGE_KEY):].lstrip(":=").strip().split()[0])
            continue
        if line == "n,t":
            continue
        _, t_str = line.split(",", 1)
        heights.append(float(t_str))
    if coverage is None:
        coverage = heights[-1] if heights else 0.0
    return ZeroCatalog(heights=tuple(heights), source="loaded", max_height_scanned=coverage)


def _resolve_catalog(args, fallback_builtin: bool) -> ZeroCatalog | None:
    path = getattr(args, "zeros_file", None) or os.environ.get("ZETA_KKR_ZEROS")
    if path:
        return _load_catalog_file(path)
    if fallback_builtin:
        return builtin_catalog()
    return None


def _model_from_args(args) -> CountingModel:
    model_id = _METHODS[args.method]
    return CountingModel.create(
        model_id,
        theta=args.theta,
        uses_exact_gamma=not getattr(args, "kkr_asymptote", False),
    )


# ---------------------------------------------------------------------------
# Subcommand runners


def _run_zeros(args) -> int:
    config = ScanConfig(
        t_min=args.t_min,
        t_max=args.t_max,
        grid_step=args.step,
        refine_tolerance=args.tol,
    )
    catalog = find_zeros(config)
    rows = [(n, h) for n, h in enumerate(catalog.heights, 1)]
    _emit(
        args,
        "zeros",
        ("n", "t"),
        rows,
        params={"t_min": args.t_min, "t_max": args.t_max, "step": args.step, "tol": args.tol},
        summary={_COVERAGE_KEY: repr(catalog.max_height_scanned), "count": len(catalog)},
    )
    print(f"scanned [{args.t_min:g}, {args.t_max:g}]: {len(catalog)} zeros", file=sys.stderr)
    return EXIT_OK


def _run_count(args) -> int:
    if args.method == "exact":
        catalog = _resolve_catalog(args, fallback_builtin=True)
        value = exact_count(catalog, args.e)
        rows = [(args.e, value)]
    else:
        if args.method not in _METHODS:
            raise UsageError(f"unknown method {args.method!r}")
        value = smooth_count(_model_from_args(args), args.e)
        rows = [(args.e, value)]
    _emit(
        args,
        "count",
        ("E", "count"),
        rows,
        params={"method": args.method, "e": args.e, "theta": args.theta},
    )
    return EXIT_OK


def _run_predict(args) -> int:
    if args.method not in _METHODS:
        raise UsageError(f"unknown method {args.method!r} (exact is not a predictor)")
    model = _model_from_args(args)
    catalog = _resolve_catalog(args, fallback_builtin=args.n_max <= 29)
    if catalog is None:
        raise CatalogError(
            "no zero catalog for comparison: pass --zeros-file or set ZETA_KKR_ZEROS"
        )
    report = compare_catalog(model, catalog, args.n_max)
    rows = list(report.entries)
    _emit(
        args,
        "predict",
        ("n", "actual", "estimate", "error"),
        rows,
        params={"method": args.method, "n_max": args.n_max, "theta": args.theta},
        summary={
            "mae": report.mae,
            "mean_spacing_actual": report.mean_spacing_actual,
            "mean_spacing_estimate": report.mean_spacing_estimate,
        },
    )
    print(f"mae={report.mae:.9f} over {len(rows)} zeros", file=sys.stderr)
    return EXIT_OK


def _run_ratio(args) -> int:
    values = [float(v) for v in args.e_list.split(",") if v.strip()]
    if not values:
        raise UsageError("--e-list must hold at least one height")
    rows = ratio_scan(values)
    _emit(args, "ratio", ("E", "ratio"), rows, params={"e_list": args.e_list})
    return EXIT_OK


def _run_kp(args) -> int:
    params = KronigPenneyParams.uniform(a=args.a, strength=args.strength, n_k=args.k_points)
    if args.dos is not None:
        lloyd = lloyd_integrated_dos(params, args.dos)
        counted = band_count_integrated_dos(params, args.dos)
        gap = abs(lloyd - counted)
        rows = [(args.dos, lloyd, counted, gap)]
        _emit(
            args,
            "kp",
            ("E", "lloyd", "band_count", "gap"),
            rows,
            params={"strength": args.strength, "a": args.a, "k_points": args.k_points, "dos": args.dos},
            summary={"grid_resolution": 2.0 / args.k_points},
        )
        return EXIT_OK
    structure = kp_bands(params, args.bands)
    deviation = band_deviation(params, args.bands)
    rows = [(k, b, e) for k, b, e in structure.entries]
    _emit(
        args,
        "kp",
        ("k", "band_index", "E"),
        rows,
        params={"strength": args.strength, "a": args.a, "k_points": args.k_points, "bands": args.bands},
        summary={"max_deviation_vs_transfer_matrix": f"{deviation:.3e}"},
    )
    print(f"max deviation vs transfer matrix: {deviation:.3e}", file=sys.stderr)
    return EXIT_OK


def _run_scatter(args) -> int:
    ic = {"even": "even", "odd": "odd", "w": "w_function"}[args.ic]
    if ic == "w_function":
        if not (0.5 <= args.e_hat <= 10.0):
            raise UsageError(f"--e-hat must lie in [0.5, 10] for --ic w, got {args.e_hat:g}")
        report = verify_w_phase(args.e_hat, xi_max=args.xi_max)
        fit = report.fit
        pairs = [
            ("c1_re", fit.c1.real),
            ("c1_im", fit.c1.imag),
            ("c2_re", fit.c2.real),
            ("c2_im", fit.c2.imag),
            ("residual_rms", fit.residual_rms),
            ("window_lo", fit.window[0]),
            ("window_hi", fit.window[1]),
            ("measured_offset", report.measured_offset),
            ("predicted_offset", report.predicted_offset),
            ("gap", report.gap),
        ]
    else:
        if not (0.0 <= args.e_hat <= 20.0):
            raise UsageError(f"--e-hat must lie in [0, 20], got {args.e_hat:g}")
        sol = integrate_iho(args.e_hat, args.xi_max, ic_kind=ic)
        window = (max(15.0, args.xi_max * 2.0 / 3.0), args.xi_max)
        fit = fit_asymptotic(sol, window)
        pairs = [
            ("c1_re", fit.c1.real),
            ("c1_im", fit.c1.imag),
            ("c2_re", fit.c2.real),
            ("c2_im", fit.c2.imag),
            ("residual_rms", fit.residual_rms),
            ("window_lo", fit.window[0]),
            ("window_hi", fit.window[1]),
        ]
    if args.format == "json":
        _emit(
            args,
            "scatter",
            ("key", "value"),
            pairs,
            params={"e_hat": args.e_hat, "ic": args.ic, "xi_max": args.xi_max},
        )
    else:
        out = sys.stdout if args.output is None else open(args.output, "w", encoding="ascii")
        try:
            for key, value in pairs:
                out.write(f"{key}={value!r}\n")
        finally:
            if out is not sys.stdout:
                out.close()
    return EXIT_OK


def _run_kkr(args) -> int:
    if args.quantize:
        problem = QuantizationProblem(m=args.m, theta=args.theta, n_range=(args.n_min, args.n_max))
        rows = krein_quantization(problem)
        params = {
            "quantize": True,
            "m": args.m,
            "theta": args.theta,
            "n_min": args.n_min,
            "n_max": args.n_max,
        }
    else:
        if args.e_max is None:
            raise UsageError("kkr needs --e-max (root scan) or --quantize")
        roots = kkr_det_roots((args.e_min, args.e_max), args.theta)
        rows = [(det_root_index(r, args.theta), r) for r in roots]
        params = {"quantize": False, "theta": args.theta, "e_min": args.e_min, "e_max": args.e_max}
    _emit(args, "kkr", ("n", "e_hat"), rows, params=params)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="write data here instead of stdout")
    sub.add_argument("--config", default=None, help="key = value file of flag defaults")


def build_parser() -> _Parser:
    parser = _Parser(prog="zetakkr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zetakkr {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("zeros", help="scan for critical-line zeros")
    sub.add_argument("--t-min", type=float, default=0.0)
    sub.add_argument("--t-max", type=float, required=True)
    sub.add_argument("--step", type=float, default=0.05)
    sub.add_argument("--tol", type=float, default=1e-9)
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_zeros)

    sub = subs.add_parser("count", help="zero count at a height, exact or smooth")
    sub.add_argument("--method", required=True, choices=("exact", *sorted(_METHODS)))
    sub.add_argument("--e", type=float, required=True)
    sub.add_argument("--theta", type=float, default=None)
    sub.add_argument("--zeros-file", default=None)
    sub.add_argument("--kkr-asymptote", action="store_true",
                     help="use the logarithmic asymptote for kkr-gamma")
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_count)

    for name in ("predict", "compare"):
        sub = subs.add_parser(name, help="model zero estimates vs an exact catalog")
        sub.add_argument("--method", required=True, choices=tuple(sorted(_METHODS)))
        sub.add_argument("--n-max", type=int, required=True)
        sub.add_argument("--theta", type=float, default=None)
        sub.add_argument("--zeros-file", default=None)
        sub.add_argument("--kkr-asymptote", action="store_true")
        _add_output_flags(sub)
        sub.set_defaults(runner=_run_predict)

    sub = subs.add_parser("ratio", help="shared large-E limit of the leading terms")
    sub.add_argument("--e-list", required=True, help="comma-separated heights")
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_ratio)

    sub = subs.add_parser("kp", help="Kronig-Penney bands or integrated DOS")
    sub.add_argument("--strength", type=float, required=True)
    sub.add_argument("--a", type=float, default=1.0)
    sub.add_argument("--k-points", type=int, default=64)
    sub.add_argument("--bands", type=int, default=3)
    sub.add_argument("--dos", type=float, default=None,
                     help="report Lloyd vs band-count integrated DOS at this energy")
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_kp)

    sub = subs.add_parser("scatter", help="far-field fit of an integrated solution")
    sub.add_argument("--e-hat", type=float, required=True)
    sub.add_argument("--ic", choices=("even", "odd", "w"), default="w")
    sub.add_argument("--xi-max", type=float, default=30.0)
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_scatter)

    sub = subs.add_parser("kkr", help="determinant roots / chain quantization")
    sub.add_argument("--theta", type=float, required=True)
    sub.add_argument("--e-min", type=float, default=0.0)
    sub.add_argument("--e-max", type=float, default=None)
    sub.add_argument("--quantize", action="store_true")
    sub.add_argument("--m", type=int, default=1)
    sub.add_argument("--n-min", type=int, default=0)
    sub.add_argument("--n-max", type=int, default=None)
    _add_output_flags(sub)
    sub.set_defaults(runner=_run_kkr)

    return parser


def _load_config_flags(path) -> list:
    flags = []
    with open(path, "r", encoding="ascii") as fh:
        for line_number, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line {line_number}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            flags.append(f"--{key.replace('_', '-')}")
            flags.append(value)
    return flags


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        # Config files supply defaults: inject their flags right after the
        # subcommand so explicit flags (parsed later) override them.
        if "--config" in argv:
            idx = argv.index("--config")
            if idx + 1 >= len(argv):
                raise UsageError("--config needs a path")
            if idx == 0:
                raise UsageError("--config belongs after a subcommand")
            config_flags = _load_config_flags(argv[idx + 1])
            argv = [argv[0]] + config_flags + argv[1:idx] + argv[idx + 2:]
        args = parser.parse_args(argv)
        if getattr(args, "n_max", None) is None and getattr(args, "quantize", False):
            raise UsageError("--quantize needs --n-max")
        return args.runner(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConvergenceError, NonFiniteError, ZetaKKRError) as exc:
        # remaining package errors are numerical except pure input-domain ones
        if isinstance(exc, DomainError):
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
