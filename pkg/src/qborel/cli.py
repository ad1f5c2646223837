"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coeff import (
    LaurentPoly,
    NonMonomialDivision,
    QhatFraction,
    RootOfUnityError,
    check_specialization,
    coeff_str,
    coeff_to_json,
)
from .ncalg import AlgebraError, AlgebraSpec, KINDS, NCPoly, TensorPoly, borel
from . import qcoord as qc
from .parse import ParseError, parse_expr, parse_index_list, parse_rational
from .uqrep.functionals import FunctionalError, functional_eval
from .uqrep.pairing import LEFT, RIGHT, PairingError, geq0, leq0, pair
from .uqrep.uq import UqElement, UqError
from .uqrep.weights import WeightError
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3
MAX_SIZE = 6

DOMAIN_ERRORS = (AlgebraError, UqError, WeightError, FunctionalError, PairingError,
                 RootOfUnityError, ZeroDivisionError, NonMonomialDivision)


class DomainError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _common(p, algebra=False):
    p.add_argument("--size", type=int, default=2, help="N = n + 1")
    p.add_argument("--q", default=None, help="specialize q to a rational p/r")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--force", action="store_true", help=f"allow size > {MAX_SIZE}")
    if algebra:
        p.add_argument("--algebra", choices=KINDS, default="qm")


def build_parser():
    ap = _Parser(prog="qborel", description="Exact computations in quantum coordinate "
                 "algebras, quantized Borels and U_q(sl_{n+1}).")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("nf", help="normal form of an expression")
    _common(p, algebra=True)
    p.add_argument("expr")

    p = sub.add_parser("qdet", help="quantum determinant")
    _common(p)

    p = sub.add_parser("minor", help="quantum minor [rows|cols]")
    _common(p)
    p.add_argument("--rows", required=True)
    p.add_argument("--cols", required=True)

    p = sub.add_parser("delta", help="comultiplication")
    _common(p, algebra=True)
    p.add_argument("expr")

    p = sub.add_parser("counit", help="counit")
    _common(p, algebra=True)
    p.add_argument("expr")

    p = sub.add_parser("antipode", help="antipode of a generator X[i,j]")
    _common(p)
    p.add_argument("--entry", required=True, help="i,j")
    p.add_argument("--convention", choices=("auto", qc.PLAIN_Q, qc.MINUS_Q), default="auto")

    p = sub.add_parser("pair", help="dual pairing (left in U^{<=0}, right in U^{>=0})")
    _common(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--strategy", choices=(LEFT, RIGHT), default=LEFT)

    p = sub.add_parser("eval", help="evaluate a borel+ functional on a U^{>=0} element")
    _common(p)
    p.add_argument("--functional", required=True)
    p.add_argument("--element", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    return ap


def _qval(args):
    if args.q is None:
        return None
    v = parse_rational(args.q)
    try:
        return check_specialization(v)
    except (RootOfUnityError, ZeroDivisionError) as exc:
        raise DomainError(str(exc)) from exc


def _check_size(args):
    if args.size < 2:
        raise DomainError("size must be at least 2")
    if args.size > MAX_SIZE and not args.force:
        raise DomainError(f"size {args.size} exceeds {MAX_SIZE}; pass --force to override")


def _specialize(value, qval):
    if qval is None:
        return value
    if isinstance(value, NCPoly):
        return value.specialize(qval)
    if isinstance(value, TensorPoly):
        return TensorPoly(value.specs, {k: LaurentPoly.const(c.specialize(qval))
                                        for k, c in value.terms.items()})
    if isinstance(value, (LaurentPoly, QhatFraction)):
        return value.specialize(qval)
    return value


def _emit(args, value):
    if args.format == "json":
        if hasattr(value, "to_json"):
            data = value.to_json()
        elif isinstance(value, Fraction):
            data = str(value)
        else:
            data = coeff_to_json(value)
        print(json.dumps(data, sort_keys=False))
    elif isinstance(value, Fraction):
        print(str(value))
    elif isinstance(value, (LaurentPoly, QhatFraction)):
        print(coeff_str(value))
    else:
        print(str(value))


def _nc(args):
    spec = AlgebraSpec(args.algebra, args.size)
    value = parse_expr(args.expr, spec)
    if not isinstance(value, NCPoly):
        value = NCPoly.one(spec) * value
    return value


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        _check_size(args)
        qval = _qval(args)
        return _dispatch(args, qval)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError,) + DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _dispatch(args, qval) -> int:
    cmd = args.cmd
    N = args.size
    if cmd == "nf":
        _emit(args, _specialize(_nc(args), qval))
    elif cmd == "qdet":
        _emit(args, _specialize(qc.qdet(N), qval))
    elif cmd == "minor":
        rows, cols = parse_index_list(args.rows), parse_index_list(args.cols)
        if not all(1 <= r <= N for r in rows + cols):
            raise DomainError(f"minor indices must lie in [1, {N}]")
        _emit(args, _specialize(qc.qminor(rows, cols, N), qval))
    elif cmd == "delta":
        _emit(args, _specialize(qc.comult(_nc(args)), qval))
    elif cmd == "counit":
        _emit(args, _specialize(qc.counit(_nc(args)), qval))
    elif cmd == "antipode":
        i, j = parse_index_list(args.entry)
        if not (1 <= i <= N and 1 <= j <= N):
            raise DomainError(f"entry ({i},{j}) out of range")
        conv = args.convention
        if conv == "auto":
            conv, notes = qc.resolve_antipode_convention()
            for n in notes:
                print(f"note: {n}", file=sys.stderr)
        _emit(args, _specialize(qc.antipode_gen(i, j, N, conv), qval))
    elif cmd == "pair":
        n = N - 1
        y = parse_expr(args.left, leq0(n))
        x = parse_expr(args.right, geq0(n))
        y = _as_uq(y, leq0(n))
        x = _as_uq(x, geq0(n))
        _emit(args, _specialize(pair(y, x, args.strategy), qval))
    elif cmd == "eval":
        spec = borel("+", N)
        f = parse_expr(args.functional, spec)
        if not isinstance(f, NCPoly):
            f = NCPoly.one(spec) * f
        u = _as_uq(parse_expr(args.element, geq0(N - 1)), geq0(N - 1))
        _emit(args, _specialize(functional_eval(f, u), qval))
    elif cmd == "verify":
        if args.max_len < 1:
            raise DomainError("--max-len must be at least 1")
        rep = run_suite(args.suite, N, args.seed, args.max_len, qval if qval is not None else 2)
        print(rep.dumps() if args.format == "json" else rep.text())
        return EXIT_OK if rep.passed else EXIT_FAIL
    return EXIT_OK


def _as_uq(v, variant):
    if isinstance(v, UqElement):
        return v
    return UqElement.one(variant) * v


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
