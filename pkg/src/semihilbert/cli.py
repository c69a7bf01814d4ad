"""Command line entry point: ``semihilbert compute|check|search|compare``.

Exit codes: 0 clean, 1 violations found, 2 invalid input.
"""
from __future__ import annotations

import argparse
import sys

from . import io, suite
from .ensembles import default_seed
from .errors import SemiHilbertError
from .radii import a_numerical_radius, a_spectral_radius, op_seminorm
from .structure import DEFAULT_TOL, bind, compression, make_weight, sharp

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2
VIOLATION_TOL = 1e-7
_ALGOS = {"compression": "compression", "theta_sweep": "theta_sweep",
          "eigen": "eigen", "limit": "limit_formula"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        io.write_text(out, text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    return default_seed() if args.seed is None else args.seed


def _ranks(text):
    return None if text == "all" else suite.parse_range(text)


def cmd_compute(args) -> int:
    w = make_weight(io.load_matrix(args.weight), tol=args.tol)
    T = io.load_matrix(args.op)
    algo = _ALGOS[args.algo] if args.algo else None
    if args.what in ("sharp", "tilde"):
        M = sharp(w, T) if args.what == "sharp" else compression(w, T)
        _emit(io.dumps(io.matrix_to_json(M)), args.out)
        return EXIT_OK
    op = bind(w, T)
    if args.what == "seminorm":
        res = op_seminorm(op)
    elif args.what == "wA":
        res = a_numerical_radius(op, algo or "compression")
    else:
        res = a_spectral_radius(op, algo or "eigen")
    _emit(io.dumps({"what": args.what, "value": res.value, "method": res.method,
                    "error_halfwidth": res.error_halfwidth}), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    report = suite.run_suite(
        cases=args.cases,
        dims=suite.parse_range(args.dims),
        ranks=_ranks(args.ranks),
        trials=args.trials,
        seed=_seed(args),
        extras=not args.no_extras,
    )
    text = suite.report_to_csv(report) if args.format == "csv" else io.dumps(report)
    _emit(text, args.out)
    if args.out:
        print(f"violations: {report['violations']}  skipped: {report['skipped']}  "
              f"wall time: {report['wall_time']['total']:.1f}s", file=sys.stderr)
    return EXIT_VIOLATION if report["violations"] else EXIT_OK


def cmd_search(args) -> int:
    res = suite.search_extremal(args.case, dim=args.dim, rank=args.rank,
                                iters=args.iters, seed=_seed(args))
    payload = {"case": res.case, "label": res.label, "ratio": res.ratio,
               "iterations": res.iterations, "restarts": res.restarts,
               "report": res.report, "witness": res.witness}
    if args.out:
        io.write_json(args.out, payload)
        print(f"{res.case}-{res.label}: best ratio {res.ratio:.9f}")
    else:
        sys.stdout.write(io.dumps(payload))
    return EXIT_VIOLATION if res.ratio > 1.0 + VIOLATION_TOL else EXIT_OK


def cmd_compare(args) -> int:
    res = suite.compare(args.case, args.baseline, dims=suite.parse_range(args.dims),
                        ranks=_ranks(args.ranks), trials=args.trials, seed=_seed(args))
    _emit(io.dumps(res), args.out)
    return EXIT_VIOLATION if res["exceed"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semihilbert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="evaluate one quantity for a weight and operator")
    c.add_argument("--weight", required=True)
    c.add_argument("--op", required=True)
    c.add_argument("--what", required=True, choices=["seminorm", "wA", "rA", "sharp", "tilde"])
    c.add_argument("--algo", choices=sorted(_ALGOS))
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--out")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", help="run the randomized catalog suite")
    k.add_argument("--dims", default="2..6")
    k.add_argument("--ranks", default="all")
    k.add_argument("--trials", type=int, default=suite.DEFAULT_TRIALS)
    k.add_argument("--cases", default="all")
    k.add_argument("--seed", type=int)
    k.add_argument("--out")
    k.add_argument("--format", choices=["json", "csv"], default="json")
    k.add_argument("--no-extras", action="store_true",
                   help="skip the triple-sharp and generator-soundness sections")
    k.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="hill-climb for operands maximizing lhs/rhs")
    s.add_argument("--case", required=True, help="case id, optionally with a part, e.g. C01-upper")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--rank", type=int)
    s.add_argument("--iters", type=int, default=5000)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    m = sub.add_parser("compare", help="ratio of a case's bound to a weaker baseline")
    m.add_argument("--case", required=True)
    m.add_argument("--baseline", required=True)
    m.add_argument("--dims", default="2..6")
    m.add_argument("--ranks", default="all")
    m.add_argument("--trials", type=int, default=suite.DEFAULT_TRIALS)
    m.add_argument("--seed", type=int)
    m.add_argument("--out")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SemiHilbertError, ValueError) as exc:
        print(f"semihilbert: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
