"""Command-line interface: expression tools and the verification runner.

Exit codes: 0 when everything passes, 1 on a verification failure, 2 on
usage or parse errors."""

from __future__ import annotations

import argparse
import json
import sys

from .cfunc import CFunction, LatticeFunction, NonConvergentSum, jackson_integral_numeric, space_vars
from .evolution import (
    Hamiltonian,
    build_U,
    compose_check,
    dyson_check,
    free_hamiltonian,
    heisenberg_check,
    heisenberg_evolve,
    schrodinger_residual,
    unitarity_check,
)
from .expressions import ParseError, Value, parse, render
from .hopf import antipode, translate
from .pairexp import qexp
from .qfunc import act_partial_closed
from .starcalc import StarContext, star
from .suites import SUITES, SuiteOptions, run_suite

_EXP_NAMES = {"xd": "x_d", "xdh": "x_dhat", "dx": "d_x", "dhx": "dhat_x"}
_ACTION_NAMES = {
    "left": "left", "left_bar": "left_bar", "right": "right",
    "right_bar": "right_bar", "leftbar": "left_bar", "rightbar": "right_bar",
}


def _add_common(p, degree=False, order=False):
    p.add_argument("--space", choices=("line", "euclid3"), default="euclid3")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--q-value", type=float, default=None,
                   help="print scalars evaluated at this numeric q")
    p.add_argument("--tol", type=float, default=1e-10)
    if degree:
        p.add_argument("--degree", type=int, default=4)
    if order:
        p.add_argument("--order", type=int, default=4)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="qspace",
        description="exact computer algebra for two q-deformed quantum spaces",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", help=f"suite names: {', '.join(sorted(SUITES))}")
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--space", choices=("line", "euclid3"), default=None,
                   help="restrict to one space")
    p.add_argument("--json", action="store_true")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--q0", type=float, default=1.1)

    p = sub.add_parser("nf", help="normal-order a noncommutative expression")
    p.add_argument("expr")
    _add_common(p)

    p = sub.add_parser("star", help="star product of two commutative polynomials")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--reversed", action="store_true", dest="reversed_order")
    _add_common(p)

    p = sub.add_parser("d", help="closed-form derivative action")
    p.add_argument("expr")
    p.add_argument("--index", required=True, help="0, 1, +, 3, - (or p/m)")
    p.add_argument("--variant", default="left",
                   help="left, left_bar, right, right_bar")
    _add_common(p)

    p = sub.add_parser("int", help="numeric Jackson integral of lattice samples")
    p.add_argument("--from", dest="lower", required=True, help="0, x, inf or -inf")
    p.add_argument("--to", dest="upper", required=True)
    p.add_argument("--q", dest="q0", type=float, required=True)
    p.add_argument("--a", type=int, default=1, help="base exponent of the scale")
    p.add_argument("--samples", required=True,
                   help="file of 'k value' lines: f(q^k) = value")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("translate", help="q-translation of a polynomial")
    p.add_argument("expr")
    p.add_argument("--variant", choices=("L", "Lbar"), default="Lbar")
    _add_common(p)

    p = sub.add_parser("antipode", help="q-antipode of a polynomial")
    p.add_argument("expr")
    p.add_argument("--variant", choices=("L", "Lbar"), default="Lbar")
    _add_common(p)

    p = sub.add_parser("exp", help="print a truncated q-exponential")
    p.add_argument("--variant", choices=sorted(_EXP_NAMES), default="xd")
    _add_common(p, degree=True)

    p = sub.add_parser("evolve", help="evolution-operator series and checks")
    p.add_argument("--H", dest="generator", default="free",
                   help="'free' or a spatial operator expression")
    p.add_argument("--observable", default=None,
                   help="spatial operator expression to evolve")
    _add_common(p, order=True)
    return ap


def _emit(args, value: Value):
    if getattr(args, "json", False):
        print(json.dumps({"kind": value.kind, "text": render(value, args.q_value)}))
    else:
        print(render(value, args.q_value))
    return 0


def _cmd_verify(args):
    names = list(SUITES) if args.all or not args.suites else args.suites
    spaces = (args.space,) if args.space else ("line", "euclid3")
    opts = SuiteOptions(degree=args.degree, order=args.order, tol=args.tol,
                        q0=args.q0, spaces=spaces)
    try:
        reports = run_suite(names, opts)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary_line())
            for note in r.notes:
                print(f"    note: {note}")
            for f in r.failures[:5]:
                print(f"    at {f.indices}: {f.lhs} != {f.rhs}")
    return 0 if all(r.status != "fail" for r in reports) else 1


def _cmd_nf(args):
    v = parse(args.expr, args.space)
    if v.kind == "c":
        v = Value("c", v.data)  # commutative input is already normal
    return _emit(args, v)


def _cmd_star(args):
    f = parse(args.f, args.space)
    g = parse(args.g, args.space)
    for v in (f, g):
        if v.kind not in ("c", "scalar"):
            raise ParseError("star arguments must be commutative polynomials", 0)
    vars_ = space_vars(args.space)
    fd = f.data if f.kind == "c" else CFunction.constant(vars_, f.data)
    gd = g.data if g.kind == "c" else CFunction.constant(vars_, g.data)
    ctx = StarContext(args.space, "reversed" if args.reversed_order else "standard")
    return _emit(args, Value("c", star(ctx, fd, gd)))


def _cmd_d(args):
    v = parse(args.expr, args.space)
    if v.kind != "c":
        raise ParseError("derivative actions apply to commutative polynomials", 0)
    idx = {"p": "+", "m": "-"}.get(args.index, args.index)
    variant = _ACTION_NAMES.get(args.variant)
    if variant is None:
        print(f"unknown variant {args.variant!r}", file=sys.stderr)
        return 2
    out = act_partial_closed(idx, variant, v.data, args.space)
    return _emit(args, Value("c", out))


def _parse_bound(text):
    if text in ("0", "inf", "-inf"):
        return text
    return float(text)


def _cmd_int(args):
    samples = {}
    with open(args.samples) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            k_str, val_str = line.split()[:2]
            samples[(1, int(k_str))] = complex(float(val_str))
    kmax = max(abs(k) for _, k in samples)
    for k in range(-kmax, kmax + 1):
        samples.setdefault((1, k), 0j)
        samples.setdefault((-1, k), 0j)
    lat = LatticeFunction(args.q0, kmax, samples)
    lower = _parse_bound(args.lower)
    upper = _parse_bound(args.upper)

    def k_of(x):
        import math

        k = round(math.log(abs(x)) / math.log(args.q0))
        if abs(args.q0 ** k - abs(x)) > 1e-9 * abs(x):
            raise ValueError(f"{x} is not a lattice point of q0={args.q0}")
        return k

    try:
        if lower == "0" and isinstance(upper, float):
            val = jackson_integral_numeric(lat, args.a, "0_x", args.tol, k0=k_of(upper))
        elif upper == "inf" and isinstance(lower, float):
            val = jackson_integral_numeric(lat, args.a, "x_inf", args.tol, k0=k_of(lower))
        elif upper == "0" and isinstance(lower, float):
            val = jackson_integral_numeric(lat, args.a, "x_0", args.tol, k0=k_of(lower))
        elif lower == "-inf" and isinstance(upper, float):
            val = jackson_integral_numeric(lat, args.a, "minusinf_x", args.tol,
                                           k0=k_of(upper))
        else:
            print("unsupported bound combination", file=sys.stderr)
            return 2
    except (NonConvergentSum, ValueError) as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"value": [val.real, val.imag]}))
    else:
        print(val.real if abs(val.imag) < 1e-14 else val)
    return 0


def _cmd_translate(args):
    v = parse(args.expr, args.space)
    if v.kind != "c":
        raise ParseError("translations apply to commutative polynomials", 0)
    return _emit(args, Value("c", translate(args.space, args.variant, v.data)))


def _cmd_antipode(args):
    v = parse(args.expr, args.space)
    if v.kind != "c":
        raise ParseError("antipodes apply to commutative polynomials", 0)
    return _emit(args, Value("c", antipode(args.space, args.variant, v.data)))


def _cmd_exp(args):
    series = qexp(args.space, _EXP_NAMES[args.variant], args.degree)
    if args.json:
        vars_ = space_vars(args.space)
        terms = []
        for exps, dword, coeff in series:
            terms.append({
                "coordinate_exponents": list(exps),
                "derivative_word": str(dword),
                "coefficient": str(coeff),
            })
        print(json.dumps({"space": args.space, "variant": args.variant,
                          "degree": args.degree, "terms": terms}, indent=2))
    else:
        print(series)
    return 0


def _cmd_evolve(args):
    if args.generator == "free":
        H = free_hamiltonian(args.space)
    else:
        v = parse(args.generator, args.space)
        if v.kind != "nc":
            raise ParseError("the generator must be a noncommutative operator", 0)
        H = Hamiltonian(v.data, hermitian=v.data.conjugate() == v.data)
    U = build_U(H, args.order)
    reports = [
        schrodinger_residual(build_U(H, max(1, args.order - 1)), H),
        compose_check(H, args.order),
        unitarity_check(H, args.order),
        dyson_check(H, args.order),
    ]
    obs_series = None
    if args.observable:
        v = parse(args.observable, args.space)
        if v.kind != "nc":
            raise ParseError("the observable must be a noncommutative operator", 0)
        obs_series = heisenberg_evolve(v.data, H, args.order)
        reports.append(heisenberg_check(v.data, H, args.order))
    if args.json:
        payload = {
            "U": [str(c) for c in U.coeffs],
            "reports": [r.to_json() for r in reports],
        }
        if obs_series is not None:
            payload["observable"] = [str(c) for c in obs_series.coeffs]
        print(json.dumps(payload, indent=2))
    else:
        print("U(t):", U)
        if obs_series is not None:
            print("O(t):", obs_series)
        for r in reports:
            print(r.summary_line())
    return 0 if all(r.status != "fail" for r in reports) else 1


_COMMANDS = {
    "verify": _cmd_verify,
    "nf": _cmd_nf,
    "star": _cmd_star,
    "d": _cmd_d,
    "int": _cmd_int,
    "translate": _cmd_translate,
    "antipode": _cmd_antipode,
    "exp": _cmd_exp,
    "evolve": _cmd_evolve,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
