"""Command-line front end.

Subcommands: spectrum, pseudo, g1check, numrange, decompose, funcalc, demo.
Inputs come from a matrix file (--in, JSON or Matrix Market) or a named
generator (--gen).  Exit codes: 0 success, 1 usage error, 2 numerical
failure, 3 demo check failure.  Identical invocations produce identical
bytes.
"""

import argparse
import json
import sys

import numpy as np

from . import algebras, calculus, demos, g1, matrixio, numrange, pseudospec, spectral
from .contours import field_contours_svg
from .elements import MatrixElement, NilpotentAlgebraElement, NormKind
from .errors import G1LabError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _complex_arg(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _eps_arg(text):
    try:
        values = [float(p) for p in text.split(",") if p]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad eps list: {text!r}") from exc
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("eps values must be positive")
    return values


def _add_input_args(p):
    p.add_argument("--in", dest="infile", metavar="PATH",
                   help="matrix file, JSON or Matrix Market")
    p.add_argument("--gen", choices=sorted(algebras.GENERATORS),
                   help="named generator instead of a file")
    p.add_argument("--n", type=int, default=4, help="generator order")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--norm", choices=["1", "2", "inf"], default=None,
                   help="operator norm (default: 2, or the generator's)")
    p.add_argument("--lam", type=_complex_arg, default=0.0,
                   help="jordan generator eigenvalue")
    p.add_argument("--t", type=float, default=1.0,
                   help="oblique generator skew parameter")
    p.add_argument("--alpha", type=_complex_arg, default=0.0,
                   help="nilpotent-algebra unit coefficient")
    p.add_argument("--beta", type=_complex_arg, default=1.0,
                   help="nilpotent-algebra nilpotent coefficient")


def _load_element(args):
    if args.infile and args.gen:
        raise _UsageError("--in and --gen are mutually exclusive")
    if args.infile:
        m = matrixio.load_matrix(args.infile)
        return MatrixElement(m, NormKind.parse(args.norm or "2"))
    if args.gen:
        norm = NormKind.parse(args.norm) if args.norm else None
        return algebras.build_element(
            args.gen, n=args.n, seed=args.seed, norm=norm,
            lam=args.lam, t=args.t, alpha=args.alpha, beta=args.beta,
        )
    raise _UsageError("need an input: --in PATH or --gen NAME")


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _pair(z):
    return [z.real, z.imag]


def _grid_from_args(a, args):
    nx, ny = args.grid if args.grid else (pseudospec.DEFAULT_GRID_SIDE,) * 2
    if args.bounds:
        r0, r1, i0, i1 = args.bounds
        return pseudospec.GridSpec(r0, r1, i0, i1, nx, ny)
    return pseudospec.default_grid(a, nx=nx, ny=ny)


def _cmd_spectrum(args):
    a = _load_element(args)
    spec = spectral.spectrum(a, cluster_tol=args.tol)
    power = spectral.spectral_radius_limit(a, n_max=args.n_max)
    payload = {
        "clusters": [
            {"center": _pair(c), "multiplicity": m} for c, m in spec.clusters
        ],
        "eigenvalues": [_pair(w) for w in spec.eigenvalues],
        "spectral_radius": spec.spectral_radius,
        "spectral_radius_power_route": {
            "value": power.value,
            "terms": list(power.terms),
        },
        "cluster_tol": spec.cluster_tol,
        "residual_bound": spec.residual_bound,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_pseudo(args):
    a = _load_element(args)
    field = pseudospec.resolvent_field(a, _grid_from_args(a, args))
    if args.format == "svg":
        if not args.eps:
            raise _UsageError("svg output needs --eps levels")
        _emit(field_contours_svg(field, args.eps), args.out)
    elif args.format == "csv":
        _emit(pseudospec.field_to_csv(field), args.out)
    else:
        _emit(pseudospec.field_to_json(field), args.out)
    return 0


def _cmd_g1check(args):
    a = _load_element(args)
    report = g1.certify_g1(a, tol=args.tol)
    _emit(report.to_json(), args.out)
    return 0


def _cmd_numrange(args):
    a = _load_element(args)
    hull = numrange.numerical_range(a, directions=args.directions)
    payload = [_pair(v) for v in hull.vertices]
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _cmd_decompose(args):
    a = _load_element(args)
    dec = calculus.spectral_decomposition(a, tol=args.tol, nodes=args.nodes)
    projections = []
    for _lam, e in dec.pairs:
        if isinstance(e, NilpotentAlgebraElement):
            projections.append({"alpha": _pair(e.alpha), "beta": _pair(e.beta)})
        else:
            projections.append(
                [[_pair(v) for v in row] for row in e.matrix]
            )
    payload = {
        "lambdas": [_pair(lam) for lam, _ in dec.pairs],
        "defects": dec.defects,
        "kappa_gap": dec.kappa_gap,
        "within_tolerance": dec.within_tolerance,
        "projections": projections,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


_FUNCTIONS = {
    "exp": np.exp,
    "identity": lambda z: z,
    "one": lambda z: 1.0,
}


def _cmd_funcalc(args):
    a = _load_element(args)
    if args.fn == "poly":
        if not args.coeffs:
            raise _UsageError("--fn poly needs --coeffs")
        coeffs = args.coeffs

        def f(z):
            return np.polyval(coeffs, z)
    else:
        f = _FUNCTIONS[args.fn]
    result = calculus.funcalc(a, f, nodes=args.nodes)
    if isinstance(result, NilpotentAlgebraElement):
        payload = {"alpha": _pair(result.alpha), "beta": _pair(result.beta)}
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit(matrixio.matrix_to_json_text(result.matrix), args.out)
    return 0


def _cmd_demo(args):
    names = demos.DEMOS.keys() if args.name == "all" else [args.name]
    lines = []
    failed = False
    for name in names:
        for check, ok, detail in demos.DEMOS[name]():
            status = "PASS" if ok else "FAIL"
            failed = failed or not ok
            lines.append(f"{status} {name}.{check}: {detail}")
    _emit("\n".join(lines) + "\n", args.out)
    return 3 if failed else 0


def build_parser():
    parser = _Parser(prog="g1lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalue clusters and spectral radius")
    _add_input_args(p)
    p.add_argument("--tol", type=float, default=None, help="cluster tolerance")
    p.add_argument("--n-max", type=int, default=64,
                   help="terms in the norm-power radius route")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("pseudo", help="resolvent-norm field / pseudospectra")
    _add_input_args(p)
    p.add_argument("--grid", type=int, nargs=2, metavar=("NX", "NY"))
    p.add_argument("--bounds", type=float, nargs=4,
                   metavar=("RE0", "RE1", "IM0", "IM1"))
    p.add_argument("--eps", type=_eps_arg, default=None,
                   help="comma-separated eps levels (svg contours)")
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_pseudo)

    p = sub.add_parser("g1check", help="certify or refute the norm equality")
    _add_input_args(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_g1check)

    p = sub.add_parser("numrange", help="numerical range hull vertices")
    _add_input_args(p)
    p.add_argument("--directions", type=int, default=360)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_numrange)

    p = sub.add_parser("decompose", help="Riesz projections and defect table")
    _add_input_args(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--nodes", type=int, default=calculus.DEFAULT_NODES)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("funcalc", help="holomorphic functional calculus")
    _add_input_args(p)
    p.add_argument("--fn", choices=["exp", "identity", "one", "poly"],
                   default="exp")
    p.add_argument("--coeffs", type=lambda s: [complex(c) for c in s.split(",")],
                   default=None, help="poly coefficients, highest power first")
    p.add_argument("--nodes", type=int, default=calculus.DEFAULT_NODES)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_funcalc)

    p = sub.add_parser("demo", help="self-checking demo scenarios")
    p.add_argument("name", choices=sorted(demos.DEMOS) + ["all"])
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_demo)

    return parser


def run(argv=None):
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        # argparse --help path
        return int(exc.code or 0)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except argparse.ArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except G1LabError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
