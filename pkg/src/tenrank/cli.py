"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 malformed tensor file, 3 numerical
failure. ``TENRANK_TOL`` sets the rank tolerance when ``--tol`` is absent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from ._accel import backend_name
from .detector import all_n_ranks, max_detectable_rank, rank_lower_bound
from .errors import NumericalError, TenrankError, TensorFormatError
from .harness import REGIMES, run_trials, summarize, trial_dict
from .splitter import balanced_split
from .tio import (
    GENERATOR,
    emit_rmax_table,
    format_tensor,
    read_tensor,
    synth_tensor,
    write_rmax_csv,
    write_tensor,
)

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dims(text):
    try:
        dims = [int(tok) for tok in text.replace("x", ",").split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dimension list {text!r}") from None
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"dimensions must be positive integers, got {text!r}")
    return dims


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text!r}")
    return value


def _tolerance(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("TENRANK_TOL")
    if env:
        try:
            return _positive_float(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"TENRANK_TOL: {exc}") from None
    return None


def _fmt_modes(modes, dims):
    return "[" + ", ".join(str(m) for m in modes) + "] (dims " + "x".join(str(dims[m]) for m in modes) + ")"


def _print_split(split, dims, out):
    print(f"s1: {_fmt_modes(split.s1, dims)}", file=out)
    print(f"s2: {_fmt_modes(split.s2, dims)}", file=out)
    print(f"unfolding: {split.rows} x {split.cols}", file=out)


def cmd_synth(args, out):
    t, _ = synth_tensor(args.dims, args.rank, args.seed, args.distribution)
    meta = {
        "generator": GENERATOR,
        "seed": args.seed,
        "rank": args.rank,
        "distribution": args.distribution,
    }
    if args.out:
        write_tensor(args.out, t, meta)
        print(f"wrote {args.out}: dims {'x'.join(map(str, t.dims))}, constructed rank {args.rank}, "
              f"generator {GENERATOR}, seed {args.seed}", file=out)
    else:
        out.write(format_tensor(t, meta))


def _report(args):
    tf = read_tensor(args.file)
    return tf, rank_lower_bound(tf.tensor, _tolerance(args))


def cmd_detect(args, out):
    tf, rep = _report(args)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2), file=out)
        return
    dims = tf.tensor.dims
    print(f"dims: {' '.join(map(str, dims))}", file=out)
    if rep.split is not None:
        _print_split(rep.split, dims, out)
    print(f"lower_bound: {rep.lower_bound}", file=out)
    print(f"r_max: {rep.r_max}", file=out)
    if rep.detected:
        print(f"detected: yes, rank {rep.detected_rank} (generic factors assumed)", file=out)
    else:
        print("detected: no, unfolding has full rank; search for the rank may start "
              f"at {rep.lower_bound}", file=out)
    print(f"tolerance: {rep.tolerance_used:.6g}", file=out)
    sv = " ".join(f"{s:.6g}" for s in rep.singular_values)
    print(f"singular_values: {sv}", file=out)


def cmd_bound(args, out):
    tf, rep = _report(args)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2), file=out)
        return
    print(f"lower_bound: {rep.lower_bound}", file=out)
    qualifier = "rank-deficient" if rep.detected else "full rank"
    print(f"unfolding: {rep.unfolding_shape[0]} x {rep.unfolding_shape[1]} ({qualifier})", file=out)


def cmd_split(args, out):
    split = balanced_split(args.dims, args.strategy.replace("-", "_"))
    if args.json:
        d = split.to_dict()
        d["min_product"] = split.min_product
        d["strategy"] = args.strategy
        print(json.dumps(d), file=out)
        return
    _print_split(split, args.dims, out)
    print(f"min_product: {split.min_product}", file=out)


def cmd_rmax(args, out):
    r_max, split = max_detectable_rank(args.dims)
    if args.json:
        print(json.dumps({"r_max": r_max, "split": split.to_dict()}), file=out)
        return
    print(f"r_max: {r_max}", file=out)
    _print_split(split, args.dims, out)


def cmd_figure(args, out):
    rows = emit_rmax_table(args.imax, args.nmax)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_rmax_csv(rows, fh)
    else:
        write_rmax_csv(rows, out)


def cmd_nranks(args, out):
    t = read_tensor(args.file).tensor
    if t.order < 2:
        raise UsageError("nranks needs a tensor of order at least 2")
    for n, res in all_n_ranks(t, _tolerance(args)):
        rows = int(np.prod(t.dims[:n]))
        cols = t.size // rows
        print(f"n={n} {rows}x{cols} rank={res.rank}", file=out)


def cmd_mc(args, out):
    lo, hi = args.dim_range
    trials = run_trials(
        args.trials, args.seed, regime=args.regime, orders=tuple(args.orders),
        dim_range=(lo, hi), distribution=args.distribution, tol=_tolerance(args),
        workers=args.workers,
    )
    summary = summarize(trials)
    summary.update(seed=args.seed, generator=GENERATOR, regime=args.regime)
    if args.json:
        payload = dict(summary)
        if args.per_trial:
            payload["trial_records"] = [trial_dict(t) for t in trials]
        print(json.dumps(payload, indent=2), file=out)
        return
    if args.per_trial:
        for t in trials:
            print(f"{t.index} dims={'x'.join(map(str, t.dims))} R={t.constructed_rank} "
                  f"r_max={t.r_max} bound={t.lower_bound} detected={int(t.detected)}", file=out)
    for key in ("regime", "trials", "hits", "sound", "detected", "full_rank_fallback", "seed", "generator"):
        print(f"{key}: {summary[key]}", file=out)


def build_parser():
    p = _Parser(prog="tenrank", description="CP rank lower bounds from the maximally square unfolding.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend_name()})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="write a random tensor of known constructed rank")
    s.add_argument("--dims", type=_dims, required=True)
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--distribution", choices=["gaussian", "uniform"], default="gaussian")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synth)

    for name, func, help_ in (
        ("detect", cmd_detect, "rank bound and detection verdict"),
        ("bound", cmd_bound, "rank lower bound only"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--tol", type=_positive_float)
        s.add_argument("--json", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("split", help="maximally square mode bipartition")
    s.add_argument("--dims", type=_dims, required=True)
    s.add_argument("--strategy", choices=["exact", "sum-dp", "sum_dp"], default="exact")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("rmax", help="maximum detectable rank for a shape")
    s.add_argument("--dims", type=_dims, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rmax)

    s = sub.add_parser("figure", help="CSV of R_max for cubical tensors")
    s.add_argument("--imax", type=int, default=20)
    s.add_argument("--nmax", type=int, default=11)
    s.add_argument("--out")
    s.set_defaults(func=cmd_figure)

    s = sub.add_parser("nranks", help="rank of every contiguous unfolding")
    s.add_argument("file")
    s.add_argument("--tol", type=_positive_float)
    s.set_defaults(func=cmd_nranks)

    s = sub.add_parser("mc", help="Monte Carlo detection experiment")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--regime", choices=REGIMES, default="detect")
    s.add_argument("--orders", type=_dims, default=[3, 4, 5])
    s.add_argument("--dim-range", type=int, nargs=2, default=[2, 6], metavar=("LO", "HI"))
    s.add_argument("--distribution", choices=["gaussian", "uniform"], default="gaussian")
    s.add_argument("--tol", type=_positive_float)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--per-trial", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_mc)
    return p


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"tenrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TensorFormatError as exc:
        print(f"tenrank: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except NumericalError as exc:
        print(f"tenrank: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"tenrank: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TenrankError as exc:
        print(f"tenrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
