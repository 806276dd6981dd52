"""Command-line entry point: ``levycalc <command> ...``.

Exit codes: 0 ok, 2 usage or malformed document, 3 validation failure,
4 numerical failure (including a failed verification check).
"""

from __future__ import annotations

import argparse
import datetime
import itertools
import sys

import numpy as np

from . import __version__
from .classifier import MAX_ORDER_CAP, classify_completely_s, classify_order
from .documents import (class_report_to_doc, dumps, ecf_to_doc, loads, triple_from_doc,
                        triple_to_doc, verdict_to_doc)
from .errors import LevyCalcError, MalformedDocument, VerificationFailed
from .exponents import exponent, exponent_transform, kernel_cf
from .hyperbolic import PSI_C, d_log_psi, printed_c, verdict_table
from .measures import default_grid, validate_measure
from .simulator import empirical_cf, sample_integral_exact
from .transforms import i_transform, j_alpha
from .verification import SUITES, run_suite

METHODS = ("triple", "quadrature", "kernel")


def _header(args):
    if args.no_header:
        return ""
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return f"# levycalc {__version__} {stamp}\n"


def _read_triple(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedDocument(f"cannot read {path}: {exc.strerror}") from exc
    t = triple_from_doc(loads(text))
    validate_measure(t.measure)
    return t


def _write_text(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_transform(args):
    t = _read_triple(args.input)
    if args.i_map:
        out = i_transform(t)
    else:
        if args.alpha is None:
            raise MalformedDocument("--alpha is required unless --i-map is given")
        if args.alpha < 0:
            raise MalformedDocument("--alpha must be non-negative")
        out = j_alpha(t, args.alpha)
    _write_text(dumps(triple_to_doc(out), _header(args)), args.out)
    return 0


def _cf_methods(t, alpha, method):
    chosen = METHODS if method == "all" else (method,)
    out = {}
    for name in chosen:
        if name == "triple":
            out[name] = exponent(j_alpha(t, alpha))
        elif name == "quadrature":
            out[name] = exponent_transform(exponent(t), alpha)
        else:
            if alpha != int(alpha) or alpha < 1:
                raise MalformedDocument("the kernel method needs a positive integer --alpha")
            out[name] = kernel_cf(t, int(alpha))
    return out


def cmd_cf(args):
    if args.points < 1:
        raise MalformedDocument("--points must be at least 1")
    t = _read_triple(args.input)
    ys = np.linspace(args.ymin, args.ymax, args.points)
    engines = _cf_methods(t, args.alpha, args.method)
    values = {name: fn(ys) for name, fn in engines.items()}
    lines = [_header(args), f"# alpha={args.alpha:g}\n", "method,y,re,im\n"]
    for name, vals in values.items():
        for y, v in zip(ys, vals):
            lines.append(f"{name},{float(y)!r},{float(v.real)!r},{float(v.imag)!r}\n")
    if len(values) > 1:
        dev = max(float(np.max(np.abs(values[a] - values[b])))
                  for a, b in itertools.combinations(values, 2))
        lines.append(f"# max pairwise deviation: {dev:.3e}\n")
    _write_text("".join(lines), args.out)
    return 0


def cmd_classify(args):
    if not 1 <= args.max_order <= MAX_ORDER_CAP:
        raise MalformedDocument(f"--max-order must lie in 1..{MAX_ORDER_CAP}")
    t = _read_triple(args.input)
    grid = None
    if args.grid_points is not None:
        if args.grid_points < 10:
            raise MalformedDocument("--grid-points must be at least 10")
        base = default_grid(t.measure)
        grid = np.geomspace(base[0], base[-1], args.grid_points)
    rep = classify_order(t, args.max_order, grid)
    verdict = classify_completely_s(t.measure).verdict
    _write_text(dumps(class_report_to_doc(rep, verdict), _header(args)), args.out)
    return 0


def cmd_simulate(args):
    if args.samples < 1:
        raise MalformedDocument("--samples must be at least 1")
    if not args.alpha > 0:
        raise MalformedDocument("--alpha must be positive")
    t = _read_triple(args.input)
    batch = sample_integral_exact(t, args.alpha, args.samples, args.seed, threads=args.threads)
    if args.format == "bin":
        data = batch.values.astype("<f8").tobytes()
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    else:
        text = _header(args) + "".join(f"{v!r}\n" for v in batch.values.tolist())
        _write_text(text, args.out)
    ys = np.linspace(-args.cf_ymax, args.cf_ymax, args.cf_points)
    ecf = empirical_cf(batch, ys)
    analytic = np.exp(exponent(j_alpha(t, args.alpha))(ys))
    summary = {
        "alpha": args.alpha, "seed": args.seed, "n": args.samples,
        "empirical_cf": ecf_to_doc(ecf),
        "max_deviation_in_stderr": float(np.max(np.abs(ecf.values - analytic)
                                                / np.maximum(ecf.stderr, 1e-300))),
    }
    # samples may occupy stdout, so the summary goes to stderr unless written to a file
    target = sys.stdout if args.out else sys.stderr
    target.write(dumps(summary))
    return 0


def cmd_verify(args):
    results = run_suite(args.suite, emit=lambda s: print(s, flush=True), threads=args.threads)
    failed = [r for r in results if not r.passed]
    if failed:
        raise VerificationFailed(f"first failing invariant: {failed[0].name}")
    return 0


def cmd_hyperbolic(args):
    table = verdict_table(tuple(args.t))
    c_rows = []
    for t in args.t:
        num = d_log_psi(PSI_C, t)
        c_rows.append((t, num, printed_c(t), abs(num - printed_c(t))))
    _write_text(dumps(verdict_to_doc(table, c_rows), _header(args)), args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="levycalc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"levycalc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-header", action="store_true",
                        help="omit the timestamp header line")
    common.add_argument("--out", help="output file (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("transform", parents=[common], help="apply J^alpha or the I map")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--alpha", type=float)
    s.add_argument("--i-map", action="store_true")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("cf", parents=[common], help="tabulate the exponent of the J^alpha image")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--ymin", type=float, default=-10.0)
    s.add_argument("--ymax", type=float, default=10.0)
    s.add_argument("--points", type=int, default=41)
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--method", choices=METHODS + ("all",), default="triple")
    s.set_defaults(func=cmd_cf)

    s = sub.add_parser("classify", parents=[common], help="numerical class membership")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-order", type=int, default=3)
    s.add_argument("--grid-points", type=int)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("simulate", parents=[common], help="exact Monte Carlo draws")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("csv", "bin"), default="csv")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--cf-points", type=int, default=21)
    s.add_argument("--cf-ymax", type=float, default=5.0)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("verify", help="run verification suites")
    s.add_argument("--suite", choices=tuple(SUITES), default="all")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hyperbolic", parents=[common], help="verdict table for D log psi")
    s.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0, 2.0, 3.0, 5.0])
    s.set_defaults(func=cmd_hyperbolic)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except LevyCalcError as exc:
        print(f"levycalc: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        print(f"levycalc: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
