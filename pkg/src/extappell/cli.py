"""Command-line surface: point evaluation, verification suites, golden files.

Exit codes: 0 success, 1 verification failures, 2 domain error,
3 convergence failure, 64 usage error.  Values print as "re im" on
stdout with a one-line method trace on stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bessel import bessel_k
from .errors import ConvergenceError, DomainError, PoleError
from .extbeta import ExtensionParams, chaudhry_beta, extended_beta
from .f1pv import EvaluationMethod, ExtendedAppellInput, f1pv, f1pv_integral, f1pv_series
from .hyper import AppellParams, appell_f1_integral, appell_f1_series
from .meijer import GSpec, meijer_g
from .mellin import (
    InversionContour,
    mellin_forward_closed,
    mellin_inverse_numeric,
)
from .quadrature import QuadratureConfig, default_config
from .report import write_report
from .scalar import is_nonpositive_integer
from .suites import SUITES, run_suite, summarize

_EVAL_FNS = (
    "beta_pv", "chaudhry_beta", "f1", "f1pv", "bessel_k", "meijer_g",
    "mellin_fwd", "mellin_inv",
)

_REQUIRED = {
    "beta_pv": ("x", "y", "p", "nu"),
    "chaudhry_beta": ("x", "y", "p"),
    "f1": ("b1", "b2", "b3", "c1", "x", "y"),
    "f1pv": ("b1", "b2", "b3", "c1", "x", "y", "p", "nu"),
    "bessel_k": ("nu", "z"),
    "mellin_fwd": ("b1", "b2", "b3", "c1", "x", "y", "nu", "s"),
    "mellin_inv": ("b1", "b2", "b3", "c1", "x", "y", "nu", "p"),
}

_G_PARAMS = {
    "G2012": ("a1", "b1", "b2"),
    "G2112": ("a1", "b1", "b2"),
    "G2002": ("b1", "b2"),
    "G4004": ("b1", "b2", "b3", "b4"),
}


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 64 on usage problems."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(64)


def _build_parser() -> _Parser:
    parser = _Parser(prog="extappell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    pe = sub.add_parser("eval", help="evaluate one function at a point")
    pe.add_argument("fn", choices=_EVAL_FNS)
    pe.add_argument("params", nargs="*", metavar="key=value",
                    help="complex values accepted, e.g. p=1+0.5j")
    pe.add_argument("--route", choices=("series", "integral", "auto"), default="auto")
    pe.add_argument("--tol", type=float, default=None)

    pv = sub.add_parser("verify", help="run identity-verification suites")
    pv.add_argument("suite", choices=("all", *SUITES))
    pv.add_argument("--trials", type=int, default=20)
    pv.add_argument("--seed", type=int, default=1)
    pv.add_argument("--tol", type=float, default=None)
    pv.add_argument("--report", default=None, metavar="PATH")

    pg = sub.add_parser("golden", help="write an oracle-valued golden CSV")
    pg.add_argument("out", metavar="PATH")
    pg.add_argument("--resolution", choices=("standard", "high"), default="standard")
    return parser


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise DomainError(f"expected key=value, got {item!r}")
        key, _, raw = item.partition("=")
        try:
            out[key.strip()] = complex(raw)
        except ValueError:
            out[key.strip()] = raw.strip()  # tags such as case=G2012
    return out


def _need(params: dict, keys) -> list:
    missing = [k for k in keys if k not in params]
    if missing:
        raise DomainError(f"missing parameters: {', '.join(missing)}")
    return [params[k] for k in keys]


def _cmd_eval(args) -> int:
    params = _parse_params(args.params)
    cfg = default_config(args.tol) if args.tol else None
    fn = args.fn
    if fn == "meijer_g":
        case = params.pop("case", None)
        if not isinstance(case, str):
            raise DomainError("meijer_g needs case=G2012|G2112|G2002|G4004")
        keys = _G_PARAMS.get(case)
        if keys is None:
            raise DomainError(f"unknown Meijer-G case {case!r}")
        vals = _need(params, keys + ("z",))
        alpha = tuple(v for k, v in zip(keys, vals) if k.startswith("a"))
        beta_ = tuple(v for k, v in zip(keys, vals) if k.startswith("b"))
        spec = GSpec(case, alpha, beta_, vals[-1], params.get("mu", 0.0))
        value = meijer_g(spec)
        trace = f"meijer_g case={case} slater-residue"
    elif fn == "beta_pv":
        x, y, p, nu = _need(params, _REQUIRED[fn])
        value = extended_beta(x, y, ExtensionParams(p, nu.real), cfg)
        trace = "extended Beta, tanh-sinh with scaled Bessel kernel"
    elif fn == "chaudhry_beta":
        x, y, p = _need(params, _REQUIRED[fn])
        value = chaudhry_beta(x, y, p, cfg)
        trace = "Chaudhry Beta, tanh-sinh"
    elif fn == "f1":
        b1, b2, b3, c1, x, y = _need(params, _REQUIRED[fn])
        ap = AppellParams(b1, b2, b3, c1, x, y)
        route = args.route
        if route == "auto":
            route = "series" if abs(ap.x) <= 0.9 and abs(ap.y) <= 0.9 else "integral"
        value = appell_f1_series(ap) if route == "series" else appell_f1_integral(ap, cfg)
        trace = f"classical Appell F1, route={route}"
    elif fn == "f1pv":
        b1, b2, b3, c1, x, y, p, nu = _need(params, _REQUIRED[fn])
        if is_nonpositive_integer(c1 - b1):
            raise PoleError(
                "Gamma(c1 - b1) pole: both evaluation routes have undefined "
                "prefactors", c1 - b1,
            )
        inp = ExtendedAppellInput(AppellParams(b1, b2, b3, c1, x, y),
                                  ExtensionParams(p, nu.real))
        method = EvaluationMethod(route=args.route, tol=args.tol or 1e-12)
        route = method.resolve(inp)
        value = f1pv_series(inp, method, cfg) if route == "series" else f1pv_integral(inp, cfg)
        trace = f"extended Appell, route={route}"
    elif fn == "bessel_k":
        nu, z = _need(params, _REQUIRED[fn])
        value = bessel_k(nu.real, z)
        trace = "modified Bessel K, closed form / cosh integral"
    elif fn == "mellin_fwd":
        b1, b2, b3, c1, x, y, nu, s = _need(params, _REQUIRED[fn])
        value = mellin_forward_closed(AppellParams(b1, b2, b3, c1, x, y), nu.real, s)
        trace = "Mellin transform, closed form"
    else:  # mellin_inv
        b1, b2, b3, c1, x, y, nu, p = _need(params, _REQUIRED[fn])
        contour = None
        if "c" in params:
            contour = InversionContour(c=params["c"].real)
        value = mellin_inverse_numeric(
            AppellParams(b1, b2, b3, c1, x, y), nu.real, p.real, contour, cfg
        )
        trace = "inverse Mellin, truncated vertical contour"
    value = complex(value)
    print(f"{value.real:.17g} {value.imag:.17g}")
    print(trace, file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise DomainError("trials must be >= 1")
    names = SUITES if args.suite == "all" else (args.suite,)
    records = []
    any_fail = False
    for name in names:
        recs = run_suite(name, args.trials, args.seed, args.tol)
        records.extend(recs)
        print(summarize(name, recs))
        any_fail = any_fail or any(r.status == "fail" for r in recs)
    if args.suite == "all":
        print(summarize("all", records))
    if args.report:
        write_report(records, args.report)
    return 1 if any_fail else 0


_GOLDEN_PARAM_SETS = (
    (1.0, 1.0, 1.0, 3.0, 0.3, 0.4),
    (0.7, -1.2, 2.0, 2.5, -0.5, 0.6),
    (2.2, 0.6, -0.4, 4.1, 0.7, -0.7),
    (1.4, 1.8, 0.9, 2.1, -0.25, -0.6),
    (0.6, -0.7, -1.5, 3.4, 0.45, 0.15),
    (2.8, 0.3, 1.1, 5.0, 0.1, 0.75),
)


def _cmd_golden(args) -> int:
    from .oracles import bruteforce_f1pv

    panels = 2_000_000 if args.resolution == "high" else 200_000
    terms = 160
    oracle_tag = f"midpoint-rule panels={panels} + double sum terms={terms}"
    lines = [
        "# oracle: closed-half-odd-kernel midpoint rule, "
        f"nodes={panels}, double-sum terms={terms}, date-free; "
        "columns: p,nu,b1,b2,b3,c1,x,y,value_re,value_im,oracle"
    ]
    for p in (0.5, 1.0, 2.5):
        for nu in (0.0, 1.0, 2.0):
            for (b1, b2, b3, c1, x, y) in _GOLDEN_PARAM_SETS:
                val = bruteforce_f1pv(b1, b2, b3, c1, x, y, p, nu,
                                      terms=terms, panels=panels)
                lines.append(
                    f"{p:.17g},{nu:.17g},{b1:.17g},{b2:.17g},{b3:.17g},"
                    f"{c1:.17g},{x:.17g},{y:.17g},{val:.17g},0,{oracle_tag}"
                )
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise DomainError(f"cannot write golden file to {args.out}: {exc}") from exc
    print(f"wrote {len(lines) - 1} rows to {args.out}", file=sys.stderr)
    return 0


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a subcommand is required (eval | verify | golden)")
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_golden(args)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
