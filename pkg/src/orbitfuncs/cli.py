"""Command-line front end.

Subcommands: eval, fold, decompose, character, verify.  Data goes to
stdout (or --output), diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .config import MC_DEFAULT_SEED
from .errors import InvalidAlgebraError, TwoLengthsRequiredError
from . import exp_ring
from .exp_ring import (FAMILIES, decompose_into_C, denominator, divide_exact,
                       character, orbit_sum)
from .orbit_functions import OrbitFunction, evaluate_grid, fold_to_F
from .root_system import build_root_system
from .verify import SuiteConfig, run_suite

USAGE_ERROR = 2


def _fmt_number(value: float) -> str:
    text = f"{value:.12g}"
    return "0" if text == "-0" else text


def _fmt_complex(z: complex) -> str:
    return f"{_fmt_number(z.real)} + {_fmt_number(z.imag)}i"


def _parse_int_vector(text, rank, what="lambda"):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise SystemExit2(f"{what} must be a comma-separated integer vector")
    if len(parts) != rank:
        raise SystemExit2(f"{what} must have {rank} entries")
    return parts


def _parse_point(text, rank):
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise SystemExit2("point must be a comma-separated real vector")
    if len(parts) != rank:
        raise SystemExit2(f"point must have {rank} entries")
    return parts


class SystemExit2(Exception):
    """Usage error carrying the message for stderr."""


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _common_flags(sub):
    sub.add_argument("--algebra", required=True, help="algebra name, e.g. G2, B3")
    sub.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sub.add_argument("--output", help="write data here instead of stdout")
    sub.add_argument("--seed", type=int, default=MC_DEFAULT_SEED)
    sub.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="orbitfuncs",
        description="Weyl group orbit functions: evaluation, folding, "
                    "decompositions, characters and verification")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", help="evaluate an orbit function")
    _common_flags(p)
    p.add_argument("--family", required=True)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="dominant weight, e.g. 1,0")
    p.add_argument("--point", help="evaluation point in coroot coordinates")
    p.add_argument("--grid", type=int, help="barycentric grid resolution over F")

    p = commands.add_parser("fold", help="fold a point into the fundamental simplex")
    _common_flags(p)
    p.add_argument("--point", required=True)

    p = commands.add_parser("decompose",
                            help="decompose a product of two family members")
    _common_flags(p)
    p.add_argument("--left", required=True, help="FAMILY:coords, e.g. SL:1,0")
    p.add_argument("--right", required=True, help="FAMILY:coords, e.g. SL:0,1")

    p = commands.add_parser("character", help="character-like function in the orbit basis")
    _common_flags(p)
    p.add_argument("--kind", choices=("full", "long", "short"), default="full")
    p.add_argument("--lambda", dest="lam", required=True)

    p = commands.add_parser("verify", help="run the verification suite")
    _common_flags(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--ring-samples", type=int, default=20)
    p.add_argument("--box", type=int, default=1)
    p.add_argument("--samples", type=int, default=100_000,
                   help="Monte Carlo samples for the numeric cross-check (0 = skip)")
    p.add_argument("--skip-enumeration-over", type=int, default=None,
                   help="cap on |W| for enumeration-dependent checks")
    return parser


def _family(text):
    fam = text.strip().upper()
    if fam not in FAMILIES:
        raise SystemExit2(f"unknown family {text!r}; expected one of {', '.join(FAMILIES)}")
    return fam


def cmd_eval(args):
    rs = build_root_system(args.algebra)
    fam = _family(args.family)
    lam = _parse_int_vector(args.lam, rs.rank)
    try:
        fn = OrbitFunction(rs, fam, lam)
    except (ValueError, TwoLengthsRequiredError) as exc:
        raise SystemExit2(str(exc))
    if (args.point is None) == (args.grid is None):
        raise SystemExit2("provide exactly one of --point or --grid")
    stream, close = _open_output(args.output)
    try:
        if args.point is not None:
            value = fn.evaluate(_parse_point(args.point, rs.rank))
            if args.format == "json":
                json.dump({"re": value.real, "im": value.imag}, stream)
                stream.write("\n")
            else:
                print(_fmt_complex(value), file=stream)
        else:
            if args.grid < 1:
                raise SystemExit2("--grid must be >= 1")
            table = evaluate_grid(fn, args.grid)
            if args.format == "json":
                json.dump(table.to_json_dict(), stream)
                stream.write("\n")
            else:
                table.write_csv(stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_fold(args):
    rs = build_root_system(args.algebra)
    x = _parse_point(args.point, rs.rank)
    res = fold_to_F(rs, x)
    families = FAMILIES if rs.two_lengths else ("C", "S")
    residual = 0.0
    for fam in families:
        fn = OrbitFunction(rs, fam, (1,) * rs.rank)
        residual = max(residual,
                       abs(fn.evaluate(x) - res.sign(fam) * fn.evaluate(res.point)))
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            json.dump({"point": list(res.point), "shift": list(res.shift),
                       "signs": {"id": 1, "sigma": res.sigma,
                                 "sigma_long": res.sigma_long,
                                 "sigma_short": res.sigma_short},
                       "check_residual": residual}, stream)
            stream.write("\n")
        else:
            print("folded:", " ".join(_fmt_number(v) for v in res.point), file=stream)
            print(f"signs: id=+1 sigma={res.sigma:+d} "
                  f"sigma_long={res.sigma_long:+d} sigma_short={res.sigma_short:+d}",
                  file=stream)
            print("shift:", " ".join(str(s) for s in res.shift), file=stream)
            print(f"check: max residual {residual:.3e} over families "
                  + ",".join(families), file=stream)
    finally:
        if close:
            stream.close()
    return 0


_KIND_VECTOR = {"id": (1, 1), "sigma": (-1, -1), "long": (-1, 1), "short": (1, -1)}
_VECTOR_KIND = {v: k for k, v in _KIND_VECTOR.items()}


def _parse_spec(text, rs):
    if ":" not in text:
        raise SystemExit2(f"spec {text!r} must look like FAMILY:coords")
    fam_text, coords = text.split(":", 1)
    fam = _family(fam_text)
    lam = _parse_int_vector(coords, rs.rank)
    return fam, lam


def _coeff_lines(coeffs, stream):
    for mu in sorted(coeffs, key=lambda m: (sum(m), m)):
        print(f"{coeffs[mu]} @ ({','.join(str(c) for c in mu)})", file=stream)


def cmd_decompose(args):
    rs = build_root_system(args.algebra)
    left_fam, left_lam = _parse_spec(args.left, rs)
    right_fam, right_lam = _parse_spec(args.right, rs)
    try:
        product = orbit_sum(rs, left_fam, left_lam) * orbit_sum(rs, right_fam, right_lam)
    except (ValueError, TwoLengthsRequiredError) as exc:
        raise SystemExit2(str(exc))
    kinds = (exp_ring.FAMILY_SIGN_KIND[left_fam], exp_ring.FAMILY_SIGN_KIND[right_fam])
    vec = tuple(a * b for a, b in zip(_KIND_VECTOR[kinds[0]], _KIND_VECTOR[kinds[1]]))
    kind = _VECTOR_KIND[vec]
    if kind == "id":
        quotient = product
        divisor = None
    else:
        which = {"sigma": "full", "long": "long", "short": "short"}[kind]
        quotient = divide_exact(rs, product, denominator(rs, which))
        divisor = which
    coeffs = decompose_into_C(rs, quotient)
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            json.dump({"skew_class": kind, "divided_by": divisor,
                       "coefficients": [
                           {"weight": list(mu), "coefficient": str(c)}
                           for mu, c in sorted(coeffs.items())]}, stream)
            stream.write("\n")
        else:
            print(f"skew class: {kind}"
                  + (f" (divided by the {divisor} denominator)" if divisor else ""),
                  file=stream)
            _coeff_lines(coeffs, stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_character(args):
    rs = build_root_system(args.algebra)
    lam = _parse_int_vector(args.lam, rs.rank)
    try:
        chi = character(rs, args.kind, lam)
    except (ValueError, TwoLengthsRequiredError) as exc:
        raise SystemExit2(str(exc))
    # report one multiplicity per orbit (coefficient of the dominant
    # exponential), integral for the full character
    from .weyl_group import orbit as weyl_orbit
    order = rs.algebra.weyl_order()
    coeffs = {mu: c * (order // len(weyl_orbit(rs, mu)))
              for mu, c in decompose_into_C(rs, chi).items()}
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            json.dump({"kind": args.kind, "lambda": list(lam),
                       "coefficient_sum": str(Fraction(chi.coefficient_sum())),
                       "multiplicities": [
                           {"weight": list(mu), "multiplicity": str(c)}
                           for mu, c in sorted(coeffs.items())]}, stream)
            stream.write("\n")
        else:
            if chi.terms == {(0,) * rs.rank: 1}:
                print("1", file=stream)
            else:
                _coeff_lines(coeffs, stream)
            print(f"coefficient sum: {chi.coefficient_sum()}", file=stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_verify(args):
    rs = build_root_system(args.algebra)
    config = SuiteConfig(trials=args.trials, ring_samples=args.ring_samples,
                         box=args.box, mc_samples=args.samples, seed=args.seed,
                         workers=args.workers,
                         **({"cap": args.skip_enumeration_over}
                            if args.skip_enumeration_over is not None else {}))
    report = run_suite(rs, config)
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            json.dump(report.to_json_dict(), stream)
            stream.write("\n")
        else:
            print(report.text(), file=stream)
    finally:
        if close:
            stream.close()
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"eval": cmd_eval, "fold": cmd_fold, "decompose": cmd_decompose,
                "character": cmd_character, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except InvalidAlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
