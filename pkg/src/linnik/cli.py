"""Command-line interface.

Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 estimation failure.
"""

from __future__ import annotations

import argparse
import math
import sys

from .distribution import LinnikParams, cdf, chf, pdf
from .errors import EstimationError, InvalidInput, LinnikError
from .estimators import (
    FracMomentConfig,
    charfn_config,
    estimate_charfn,
    estimate_frac_moment,
    estimate_mom,
)
from .montecarlo import PUBLISHED_SIZES, run_table, table_config
from .sampling import RngStream, format_sample, read_sample, sample_linnik

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_ESTIMATION = 3


def _float_list(text):
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _pairs(text):
    out = []
    for chunk in text.split(";"):
        vals = _float_list(chunk)
        if len(vals) != 2:
            raise argparse.ArgumentTypeError(f"expected 'alpha,gamma' pairs separated by ';', got {chunk!r}")
        out.append(tuple(vals))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linnik", description="Linnik L(alpha, gamma) toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a seeded Linnik sample")
    p.add_argument("--alpha", type=float, required=True, help="index, in (0,2]")
    p.add_argument("--gamma", type=float, default=1.0, help="scale, > 0 (default 1)")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--stream", type=int, default=0, help="stream id (default 0)")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")

    p = sub.add_parser("eval", help="evaluate pdf, cdf or chf")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--fn", choices=("pdf", "cdf", "chf"), required=True)
    p.add_argument("--x", nargs="+", required=True,
                   help="points (space or comma separated)")

    p = sub.add_parser("estimate", help="estimate (alpha, gamma) from a sample file")
    p.add_argument("--input", required=True, help="sample file, one value per line, '#' comments")
    p.add_argument("--method", choices=("mom", "frac", "cf"), default="mom")
    p.add_argument("--epsilon", type=float, default=None,
                   help="interval miss probability (default 0.05; not used by frac)")
    p.add_argument("--q1", type=float, default=None, help="frac only (default 0.5)")
    p.add_argument("--q2", type=float, default=None, help="frac only (default 1)")
    p.add_argument("--lambdas", type=_float_list, default=None,
                   help="cf only, comma separated (default 0.001,0.1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("simulate", help="reproduce a simulation table")
    p.add_argument("--table", choices=("1", "2", "3", "4"), required=True)
    p.add_argument("--replicates", type=int, default=2000)
    p.add_argument("--sizes", type=_int_list, default=list(PUBLISHED_SIZES),
                   help="comma separated sample sizes (default 100,1000,10000)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--params", type=_pairs, default=None,
                   help="override grid, e.g. '1.5,1;1.7,10'")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    return parser


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _params(parser, args):
    try:
        return LinnikParams(args.alpha, args.gamma)
    except InvalidInput as exc:
        parser.error(str(exc))


def cmd_sample(parser, args):
    params = _params(parser, args)
    if args.n < 1:
        parser.error("n must be >= 1")
    try:
        stream = RngStream(args.seed, args.stream)
    except InvalidInput as exc:
        parser.error(str(exc))
    _write(format_sample(sample_linnik(stream, params, args.n)), args.out)
    return 0


def cmd_eval(parser, args):
    params = _params(parser, args)
    tokens = [t for item in args.x for t in item.replace(",", " ").split()]
    try:
        xs = [float(t) for t in tokens]
    except ValueError:
        parser.error(f"--x values must be numbers, got {tokens}")
    if not all(math.isfinite(v) for v in xs):
        parser.error("--x values must be finite")
    fn = {"pdf": pdf, "cdf": cdf, "chf": chf}[args.fn]
    for tok, v in zip(tokens, xs):
        print(f"{tok},{fn(params, v)!r}")
    return 0


def _result_csv(res):
    d = res.to_dict()
    ci_a = d.pop("ci_alpha") or (None, None)
    ci_g = d.pop("ci_gamma") or (None, None)
    diag = ";".join(f"{k}={v}" for k, v in sorted(d.pop("diagnostics").items()))
    cols = ["alpha_hat", "gamma_hat", "method", "n", "stderr_alpha", "stderr_gamma",
            "ci_alpha_lower", "ci_alpha_upper", "ci_gamma_lower", "ci_gamma_upper",
            "epsilon", "diagnostics"]
    vals = [d["alpha_hat"], d["gamma_hat"], d["method"], d["n"], d["stderr_alpha"],
            d["stderr_gamma"], *ci_a, *ci_g, d["epsilon"], diag]
    cells = ["" if v is None else (repr(v) if isinstance(v, float) else str(v)) for v in vals]
    return ",".join(cols) + "\n" + ",".join(cells) + "\n"


def cmd_estimate(parser, args):
    if args.method != "frac" and (args.q1 is not None or args.q2 is not None):
        parser.error("--q1/--q2 apply only to --method frac")
    if args.method != "cf" and args.lambdas is not None:
        parser.error("--lambdas applies only to --method cf")
    if args.method == "frac" and args.epsilon is not None:
        parser.error("--epsilon does not apply to --method frac")
    epsilon = 0.05 if args.epsilon is None else args.epsilon
    if not (0.0 < epsilon < 1.0):
        parser.error("epsilon must lie in (0,1)")
    try:
        if args.method == "frac":
            config = FracMomentConfig(0.5 if args.q1 is None else args.q1,
                                      1.0 if args.q2 is None else args.q2)
        elif args.method == "cf":
            config = charfn_config(args.lambdas or (0.001, 0.1))
    except InvalidInput as exc:
        parser.error(str(exc))

    try:
        sample = read_sample(args.input)
    except OSError as exc:
        print(f"linnik: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidInput as exc:
        print(f"linnik: {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.method == "mom":
            res = estimate_mom(sample, epsilon)
        elif args.method == "frac":
            res = estimate_frac_moment(sample, config)
        else:
            res = estimate_charfn(sample, config, epsilon)
    except (EstimationError, LinnikError) as exc:
        print(f"linnik: estimation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    out = res.to_json(indent=1) + "\n" if args.format == "json" else _result_csv(res)
    sys.stdout.write(out)
    return 0


def cmd_simulate(parser, args):
    if args.replicates < 1:
        parser.error("--replicates must be >= 1")
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        config = table_config(f"T{args.table}", replicates=args.replicates, sizes=args.sizes,
                              master_seed=args.seed, workers=args.workers,
                              params=args.params, epsilon=args.epsilon)
    except InvalidInput as exc:
        parser.error(str(exc))
    progress = None if args.quiet else (lambda msg: print(msg, file=sys.stderr, flush=True))
    report = run_table(f"T{args.table}", config, progress=progress)
    _write(report.to_csv() if args.format == "csv" else report.to_json() + "\n", args.out)
    return 0


COMMANDS = {"sample": cmd_sample, "eval": cmd_eval, "estimate": cmd_estimate,
            "simulate": cmd_simulate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](parser, args)
    except OSError as exc:
        print(f"linnik: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
