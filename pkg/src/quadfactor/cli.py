"""Command-line front end.

Subcommands, one per report the library computes:

  density      rho_b(x) and rho_b(x)/x at checkpoints (csv/json/svg)
  census       indices n <= x whose n^2 + b has no primitive divisor
  chebyshev    log Q_x and its exponent-weighted split at 2x and Kx
  nx           N_x(p) histogram over p >= 2x, or V_x window sums
  chowla-todd  density of m <= x with P+(m) > 2 sqrt(m)
  mertens      sum of 1/p over primes p < x
  constants    sigma, theta, alpha, beta and the density bounds (json)
  stormer      all n with n^2 + 1 smooth below a bound (json)
  sieve        raw factorization dump of n^2 + b for n <= x

CSV output is comma-separated, LF-terminated, headered, floats with 12
significant digits, so identical runs diff clean.  Exit codes: 0 ok,
1 usage error, 2 computation error.
"""

import argparse
import json
import math
import os
import sys
from typing import List, Optional

from . import arith, constants, primitive, sieve, stats, stormer
from .errors import Error
from .svg import render_svg

THREADS_ENV = "QFL_THREADS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fnum(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _csv(rows: List[list], header: List[str]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fnum(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _checkpoint_grid(x: int, n: int) -> List[int]:
    if n <= 1:
        return [x]
    marks = sorted({max(1, round(i * x / n)) for i in range(1, n + 1)})
    if marks[-1] != x:
        marks.append(x)
    return marks


def _add_common(p, *, b=False, x=False, checkpoints=False, fmt=None):
    if b:
        p.add_argument("--b", type=int, required=True, help="sequence offset b in n^2 + b")
    if x:
        p.add_argument("--x", type=int, required=True, help="upper index/argument x")
    if checkpoints:
        p.add_argument("--checkpoints", type=int, default=1,
                       help="number of evenly spaced checkpoint rows (default 1)")
    p.add_argument("--segment-size", type=int, default=sieve.DEFAULT_SEGMENT,
                   help="sieve segment length")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default ${THREADS_ENV} or 1)")
    if fmt:
        p.add_argument("--format", choices=fmt, default=fmt[0], help="output format")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> _Parser:
    ap = _Parser(prog="quadfactor",
                 description="Primitive divisors, factor statistics and smooth "
                             "solutions for the sequences n^2 + b.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("density", help="rho_b(x): count and density of indices n <= x "
                                       "whose n^2 + b has a primitive divisor")
    _add_common(p, b=True, x=True, checkpoints=True, fmt=("csv", "json", "svg"))

    p = sub.add_parser("census", help="indices n <= x whose n^2 + b has no primitive "
                                      "divisor, i.e. x - rho_b(x)")
    _add_common(p, b=True, x=True, fmt=("csv", "json"))

    p = sub.add_parser("chebyshev", help="log Q_x = log prod |n^2 + b| and its "
                                         "exponent-weighted split over primes below "
                                         "and above 2x, partitioned again at Kx")
    _add_common(p, b=True, x=True, fmt=("csv", "json"))
    p.add_argument("--K", type=float, default=4.0, help="partition parameter K > 2")

    p = sub.add_parser("nx", help="N_x(p): for each prime p >= 2x, how many "
                                  "n in [x, 2x) it divides n^2 + b for; "
                                  "--windows sums them over (v, e*v]")
    _add_common(p, b=True, x=True, fmt=("csv", "json"))
    p.add_argument("--windows", action="store_true",
                   help="emit V_x(v) window sums instead of the histogram")

    p = sub.add_parser("chowla-todd", help="count and density of m <= x with "
                                           "P+(m) > 2 sqrt(m) (tends to log 2)")
    _add_common(p, x=True, checkpoints=True, fmt=("csv", "json"))

    p = sub.add_parser("mertens", help="sum of 1/p over primes p < x and its "
                                       "offset from log log x")
    _add_common(p, x=True, fmt=("csv", "json"))

    p = sub.add_parser("constants", help="the analytic constants sigma, theta, alpha, "
                                         "beta, the density bounds 2 sigma - 3/2 and "
                                         "2 theta - 3, residuals and identity checks")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("stormer", help="all n whose n^2 + 1 has every prime factor "
                                       "below the bound, via negative Pell chains")
    p.add_argument("--bound", type=int, required=True, help="smoothness bound B >= 3")
    p.add_argument("--kmax", type=int, default=None, help="odd solution-index cutoff override")
    p.add_argument("--digit-cap", type=int, default=stormer.DEFAULT_DIGIT_CAP,
                   help="decimal-digit cap per chain element")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("sieve", help="raw dump: exact factorization of n^2 + b "
                                     "for every n <= x")
    _add_common(p, b=True, x=True, fmt=("csv",))
    return ap


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise _UsageError(f"bad {THREADS_ENV} value: {env!r}")
    return 1


def _cmd_density(args) -> str:
    spec = arith.validate_b(args.b)
    marks = _checkpoint_grid(args.x, args.checkpoints)
    rep = primitive.rho(spec, args.x, marks, segment_size=args.segment_size,
                        threads=_threads(args))
    if args.format == "csv":
        return _csv([[x, r, ratio] for x, r, ratio in rep.checkpoints],
                    ["x", "rho", "ratio"])
    if args.format == "json":
        return json.dumps({"b": args.b, "x": args.x,
                           "rho": rep.checkpoints[-1][1],
                           "ratio": rep.checkpoints[-1][2],
                           "checkpoints": rep.checkpoints}) + "\n"
    series = [(float(x), ratio) for x, _, ratio in rep.checkpoints]
    return render_svg(series, reference=math.log(2.0),
                      title=f"density of terms with a primitive divisor, b={args.b}",
                      ylabel="rho/x")


def _cmd_census(args) -> str:
    spec = arith.validate_b(args.b)
    rep = primitive.non_primitive_census(spec, args.x, segment_size=args.segment_size,
                                         threads=_threads(args))
    if args.format == "csv":
        return _csv([[n] for n in rep.non_primitive], ["n"])
    return json.dumps({"b": args.b, "x": args.x, "count": rep.count,
                       "non_primitive": rep.non_primitive}) + "\n"


def _cmd_chebyshev(args) -> str:
    spec = arith.validate_b(args.b)
    r = stats.chebyshev_report(spec, args.x, args.K, segment_size=args.segment_size,
                               threads=_threads(args))
    if args.format == "csv":
        return _csv([[r.x, r.K, r.log_Qx, r.sum_S, r.sum_Sprime,
                      r.s, r.s_prime, r.t, r.u]],
                    ["x", "K", "log_Qx", "sum_S", "sum_Sprime", "s", "sprime", "t", "u"])
    return json.dumps({"b": args.b, "x": r.x, "K": r.K, "log_Qx": r.log_Qx,
                       "sum_S": r.sum_S, "sum_Sprime": r.sum_Sprime,
                       "s": r.s, "sprime": r.s_prime, "t": r.t, "u": r.u}) + "\n"


def _cmd_nx(args) -> str:
    spec = arith.validate_b(args.b)
    hist = stats.nx_histogram(spec, args.x, segment_size=args.segment_size,
                              threads=_threads(args))
    if args.windows:
        rows = []
        v = 2.0 * args.x
        top = max(hist.counts) if hist.counts else v
        while v <= top:
            rows.append([v, stats.vx(spec, args.x, v, hist=hist),
                         args.x / math.log(v)])
            v *= math.e
        if args.format == "csv":
            return _csv(rows, ["v", "V", "x_over_log_v"])
        return json.dumps({"b": args.b, "x": args.x,
                           "windows": [{"v": a, "V": bb, "x_over_log_v": c}
                                       for a, bb, c in rows]}) + "\n"
    if args.format == "csv":
        return _csv([[p, hist.counts[p]] for p in sorted(hist.counts)], ["p", "count"])
    return json.dumps({"b": args.b, "x": args.x, "N_total": hist.total,
                       "weighted": hist.weighted,
                       "counts": {str(p): hist.counts[p] for p in sorted(hist.counts)}}) + "\n"


def _cmd_chowla_todd(args) -> str:
    marks = _checkpoint_grid(args.x, args.checkpoints)
    rows = []
    for m in marks:
        if m < 2:
            continue
        c, ratio = stats.chowla_todd_density(m)
        rows.append([m, c, ratio])
    if args.format == "csv":
        return _csv(rows, ["x", "count", "ratio"])
    return json.dumps({"x": args.x,
                       "rows": [{"x": a, "count": b, "ratio": c} for a, b, c in rows],
                       "log2": math.log(2.0)}) + "\n"


def _cmd_mertens(args) -> str:
    s = stats.mertens_sum(args.x)
    drift = s - math.log(math.log(args.x))
    if args.format == "csv":
        return _csv([[args.x, s, drift]], ["x", "sum", "drift"])
    return json.dumps({"x": args.x, "sum": s, "loglog_x": math.log(math.log(args.x)),
                       "drift": drift}) + "\n"


def _cmd_constants(args) -> str:
    return json.dumps(constants.compute_all().as_dict(), indent=2) + "\n"


def _cmd_stormer(args) -> str:
    res = stormer.stormer_search(args.bound, k_max_override=args.kmax,
                                 digit_cap=args.digit_cap)
    return json.dumps({"B": res.B, "solutions": res.solutions, "max_n": res.max_n,
                       "truncated_Ds": res.truncated_Ds}) + "\n"


def _cmd_sieve(args) -> str:
    spec = arith.validate_b(args.b)
    cfg = sieve.SieveConfig(1, args.x + 1, segment_size=args.segment_size)
    lines = ["n,sign,factors,cofactor"]
    for tf in sieve.sieve_range(spec, cfg, threads=_threads(args)):
        fs = " ".join(f"{p}^{e}" for p, e in tf.factors)
        lines.append(f"{tf.n},{tf.sign},{fs},{tf.cofactor}")
    return "\n".join(lines) + "\n"


_DISPATCH = {
    "density": _cmd_density,
    "census": _cmd_census,
    "chebyshev": _cmd_chebyshev,
    "nx": _cmd_nx,
    "chowla-todd": _cmd_chowla_todd,
    "mertens": _cmd_mertens,
    "constants": _cmd_constants,
    "stormer": _cmd_stormer,
    "sieve": _cmd_sieve,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return exc.code or 0
    try:
        text = _DISPATCH[args.cmd](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Error as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
