"""Command-line front end: ``tplab <group> <command> [options]``.

Exit codes: 0 success, 1 a checked property failed (a counterexample, or an
identity that did not hold to ``--tol-rel``), 2 usage error, 3 numerical
non-convergence. Errors are reported on stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import asm as asm_mod
from . import chebyshev, conjectures, delta as delta_mod, kernel
from .exceptions import CapExceededError, ConvergenceError, PoleError
from .hp import DEFAULT_PRECISION_BITS, rel_diff, to_fraction, workprec
from .serialize import dumps, hp_json, plain_number

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    precision_bits: int = DEFAULT_PRECISION_BITS
    tol_rel: float = 1e-20
    seed: int = 42
    format: str = "json"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--precision-bits must be at least 64")
        if not self.tol_rel > 0:
            raise UsageError("--tol-rel must be positive")


@dataclass
class Outcome:
    payload: object
    csv: str | None = None
    violated: bool = False


# ---------------------------------------------------------------- parsing helpers


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _number_list(text: str) -> list:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _pair(text: str) -> tuple:
    vals = [float(t) for t in text.split(",")]
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated numbers")
    return tuple(vals)


def _alpha(args, cfg):
    return chebyshev.AlphaParam.make(args.alpha, cfg.precision_bits)


def _default_bits() -> int:
    env = os.environ.get("TPLAB_PRECISION_BITS")
    if env is None:
        return DEFAULT_PRECISION_BITS
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TPLAB_PRECISION_BITS is not an integer: {env!r}") from None


def _flat_csv(obj: dict) -> str:
    keys = list(obj)
    vals = []
    for k in keys:
        v = obj[k]
        if isinstance(v, dict) and "dec" in v:
            v = v["dec"]
        elif isinstance(v, (dict, list)):
            v = json.dumps(v, separators=(",", ":"))
        vals.append(str(v))
    return ",".join(keys) + "\n" + ",".join(vals) + "\n"


def _agreement(lhs, rhs, cfg) -> tuple:
    d = rel_diff(lhs, rhs, cfg.precision_bits)
    return d, bool(d <= mpmath.mpf(cfg.tol_rel))


# ---------------------------------------------------------------- handlers: kernel


def kernel_eval(args, cfg):
    a = _alpha(args, cfg)
    v = kernel.eval_kernel(a, args.x, args.y)
    return Outcome({"alpha": str(a.alpha), "x": str(args.x), "y": str(args.y), "value": hp_json(v)})


def kernel_det(args, cfg):
    a = _alpha(args, cfg)
    v = kernel.det_kernel_matrix(a, args.xs, args.ys)
    return Outcome({"alpha": str(a.alpha), "xs": [str(v) for v in args.xs], "ys": [str(v) for v in args.ys], "value": hp_json(v)})


def kernel_gram(args, cfg):
    a = _alpha(args, cfg)
    v = kernel.gram_determinant(a, args.xs)
    return Outcome({"alpha": str(a.alpha), "xs": [str(v) for v in args.xs], "value": hp_json(v)})


def _expect_positive(alpha: Fraction, order: int) -> bool:
    if alpha == 0 or (1 / alpha).denominator == 1:
        return True
    return alpha <= conjectures.theorem_threshold(order)


def kernel_tp_scan(args, cfg):
    a = _alpha(args, cfg)
    rep = kernel.tp_scan(a, args.max_order, args.samples, cfg.seed, args.log_range, args.mode)
    expect = _expect_positive(a.alpha, args.max_order)
    payload = {"seed": cfg.seed, "expectPositive": expect, **rep.to_dict()}
    rows = ["order,min_minor"] + [f"{m},{plain_number(v, 20)}" for m, v in enumerate(rep.sign_pattern, start=1)]
    return Outcome(payload, "\n".join(rows) + "\n", violated=expect and not rep.min_minor > 0)


def kernel_borchardt(args, cfg):
    lhs, rhs = kernel.borchardt_check(args.xs, args.ys, cfg.precision_bits)
    d, ok = _agreement(lhs, rhs, cfg)
    return Outcome({"lhs": hp_json(lhs), "rhs": hp_json(rhs), "relDiff": hp_json(d), "agree": ok}, violated=not ok)


def kernel_cauchy(args, cfg):
    closed = kernel.cauchy_double_alternant(args.xs, args.ys, cfg.precision_bits)
    direct = kernel.det_kernel_matrix(chebyshev.AlphaParam.make(Fraction(1, 2), cfg.precision_bits), args.xs, args.ys)
    d, ok = _agreement(direct, closed, cfg)
    return Outcome({"det": hp_json(direct), "closed": hp_json(closed), "relDiff": hp_json(d), "agree": ok}, violated=not ok)


# ---------------------------------------------------------------- logistic / cheb


def logistic_eval(args, cfg):
    a = _alpha(args, cfg)
    return Outcome({"alpha": str(a.alpha), "x": str(args.x), "value": hp_json(kernel.eval_logistic(a, args.x))})


def logistic_mgf(args, cfg):
    a = _alpha(args, cfg)
    numeric, closed = kernel.logistic_mgf_check(a, float(args.s))
    d = rel_diff(numeric, closed)
    ok = bool(d <= mpmath.mpf(args.check_tol))
    return Outcome(
        {"alpha": str(a.alpha), "s": str(args.s), "numeric": hp_json(numeric), "closed": hp_json(closed), "relDiff": hp_json(d), "agree": ok},
        violated=not ok,
    )


def cheb_u(args, cfg):
    a = _alpha(args, cfg)
    fn = chebyshev.cheb_u_recurrence if args.method == "recurrence" else chebyshev.cheb_u
    return Outcome({"alpha": str(a.alpha), "k": args.k, "method": args.method, "value": hp_json(fn(a, args.k))})


def cheb_v(args, cfg):
    a = _alpha(args, cfg)
    return Outcome({"alpha": str(a.alpha), "n": args.n, "value": hp_json(chebyshev.v_product(a, args.n))})


def cheb_qfact(args, cfg):
    q = args.q
    if q.denominator == 1:
        q = int(q)
    v = chebyshev.q_factorial(q, args.n, cfg.precision_bits)
    return Outcome({"q": str(args.q), "n": args.n, "value": str(v) if isinstance(v, (int, Fraction)) else hp_json(v)})


# ---------------------------------------------------------------- asm


def asm_count(args, cfg):
    return Outcome({"n": args.n, "count": asm_mod.asm_count(args.n)})


def _parse_matrix(text: str):
    return asm_mod.Asm(tuple(tuple(int(v) for v in row.split(",")) for row in text.split(";")))


def asm_stats(args, cfg):
    try:
        A = _parse_matrix(args.matrix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    st = asm_mod.stats(A)
    return Outcome(
        {
            "matrix": [list(r) for r in A.entries],
            "mu": st.mu,
            "nu": st.nu,
            "inv": st.inv,
            "J": st.j,
            "muRows": list(st.mu_row),
            "muCols": list(st.mu_col),
            "quarterTurn": [list(r) for r in asm_mod.quarter_turn(A).entries],
        }
    )


def asm_znk(args, cfg):
    p = asm_mod.z_nk_poly(args.n, args.k)
    coeffs = list(p.coefficients)
    csv = "degree,coefficient\n" + "".join(f"{d},{c}\n" for d, c in enumerate(coeffs))
    return Outcome({"n": args.n, "k": args.k, "coefficients": coeffs}, csv)


def asm_group(args, cfg):
    groups = asm_mod.group_by_stats(args.n)
    rows = [{"mu": mu, "nu": nu, "count": c} for (mu, nu), c in groups.items()]
    csv = "mu,nu,count\n" + "".join(f"{r['mu']},{r['nu']},{r['count']}\n" for r in rows)
    return Outcome({"n": args.n, "groups": rows}, csv)


def asm_ik(args, cfg):
    direct = asm_mod.ik_direct(args.q, args.xs, args.ys, cfg.precision_bits)
    propp = asm_mod.ik_propp_sum(args.q, args.xs, args.ys, cfg.precision_bits)
    with workprec(cfg.precision_bits):
        d = abs(direct - propp) / max(abs(direct), abs(propp))
    ok = bool(d <= mpmath.mpf(cfg.tol_rel))
    return Outcome({"direct": hp_json(direct), "propp": hp_json(propp), "relDiff": hp_json(d), "agree": ok}, violated=not ok)


# ---------------------------------------------------------------- delta


def delta_cmd(args, cfg):
    a = _alpha(args, cfg)
    if args.mode == "origin":
        v = delta_mod.delta_at_origin(a, args.n)
        return Outcome({"alpha": str(a.alpha), "n": args.n, "value": hp_json(v)})
    if args.mode == "diagonal":
        v = delta_mod.delta_diagonal(a, args.n, args.x)
        return Outcome({"alpha": str(a.alpha), "n": args.n, "x": str(args.x), "value": hp_json(v)})
    if args.y is None:
        raise UsageError("delta needs --y")
    routes = delta_mod.ROUTES if args.route == "all" else (args.route,)
    results = [delta_mod.delta(a, args.n, args.x, args.y, r) for r in routes]
    payload = {
        "alpha": str(a.alpha),
        "n": args.n,
        "x": str(args.x),
        "y": str(args.y),
        "routes": [{"route": r.route, "value": hp_json(r.value), "errorEstimate": hp_json(r.error_estimate)} for r in results],
    }
    csv = "route,value,error_estimate\n" + "".join(
        f"{r.route},{plain_number(r.value, 30)},{plain_number(r.error_estimate, 6)}\n" for r in results
    )
    return Outcome(payload, csv)


# ---------------------------------------------------------------- conj


def conj_fnk(args, cfg):
    a = _alpha(args, cfg)
    F = conjectures.f_nk(a, args.n, args.k, args.x, args.y)
    return Outcome(
        {"alpha": str(a.alpha), "n": args.n, "k": args.k, "x": str(args.x), "y": str(args.y), "value": hp_json(F.value), "imagResidue": hp_json(F.imag_residue)}
    )


def conj_fn0(args, cfg):
    a = _alpha(args, cfg)
    closed = conjectures.f_n0_closed(a, args.n, args.x, args.y)
    summed = conjectures.f_nk(a, args.n, 0, args.x, args.y).value
    d, ok = _agreement(closed, summed, cfg)
    return Outcome({"alpha": str(a.alpha), "n": args.n, "closed": hp_json(closed), "enumerated": hp_json(summed), "relDiff": hp_json(d), "agree": ok}, violated=not ok)


def conj_cvec(args, cfg):
    a = _alpha(args, cfg)
    c = conjectures.c_coefficients(a, args.n)
    csv = "i,c\n" + "".join(f"{i},{plain_number(v, 30)}\n" for i, v in enumerate(c))
    return Outcome(
        {"alpha": str(a.alpha), "n": args.n, "c": [hp_json(v) for v in c], "allPositive": all(v > 0 for v in c), "unimodal": conjectures.is_unimodal(c)},
        csv,
    )


def conj_band(args, cfg):
    B = conjectures.band_matrix(args.n)
    if args.symbolic:
        rows = B.as_strings()
        return Outcome({"n": args.n, "entries": rows}, "".join(",".join(r) + "\n" for r in rows))
    a = _alpha(args, cfg)
    M = B.evaluate(a)
    return Outcome(
        {"alpha": str(a.alpha), "n": args.n, "symbolic": B.as_strings(), "entries": [[hp_json(v) for v in r] for r in M]},
        "".join(",".join(plain_number(v, 20) for v in r) + "\n" for r in M),
    )


def conj_check_tp(args, cfg):
    a = _alpha(args, cfg)
    rep = conjectures.check_band_tp(a, args.n, args.max_order, args.tol, args.rigorous)
    conjectured = a.alpha < Fraction(1, args.n)
    return Outcome(
        {"alpha": str(a.alpha), "n": args.n, "conjecturedTP": conjectured, **rep.to_dict()}, violated=conjectured and not rep.ok
    )


def _grid(args):
    return conjectures.ratio_grid(args.ratios, args.log10_min, args.log10_max)


def conj_scan1(args, cfg):
    rep = conjectures.scan_conjecture1(args.n, args.alphas, _grid(args), cfg.precision_bits, cfg.tol_rel)
    # a printed rewriting that fails is reported like a counterexample
    failed = any(not c["holds"] for c in rep.checks)
    return Outcome(rep.to_dict(), violated=not rep.ok or failed)


def conj_scan_theorem(args, cfg):
    rep = conjectures.scan_theorem(args.n, args.alphas, _grid(args), args.route, cfg.precision_bits)
    return Outcome(rep.to_dict(), rep.table_csv(), violated=not rep.ok)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--precision-bits", type=int, default=S, help="working precision (default 256 or $TPLAB_PRECISION_BITS)")
    common.add_argument("--tol-rel", type=float, default=S, help="relative tolerance for identity checks (default 1e-20)")
    common.add_argument("--seed", type=int, default=S, help="seed for randomised scans (default 42)")
    common.add_argument("--format", choices=("json", "csv"), default=S)

    parser = _Parser(prog="tplab", description="Total positivity of the kernel 1/(x^2 + 2 cos(pi a) x y + y^2).", parents=[common])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def alpha_arg(p, required=True):
        p.add_argument("--alpha", type=_rational, required=required, help="parameter in [0, 1), e.g. 0.4 or 1/3")

    # kernel
    g = groups.add_parser("kernel", help="kernel values, determinants and scans").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "eval", kernel_eval, "K(x, y)")
    alpha_arg(p)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p = leaf(g, "det", kernel_det, "det[K(x_i, y_j)]")
    alpha_arg(p)
    p.add_argument("--xs", type=_number_list, required=True)
    p.add_argument("--ys", type=_number_list, required=True)
    p = leaf(g, "gram", kernel_gram, "det[K(x_i, x_j)]")
    alpha_arg(p)
    p.add_argument("--xs", type=_number_list, required=True)
    p = leaf(g, "tp-scan", kernel_tp_scan, "random search for negative minors")
    alpha_arg(p)
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--mode", choices=kernel.SCAN_MODES, default="mixed")
    p.add_argument("--log-range", type=_pair, default=(-4.0, 4.0))
    for name, func in (("borchardt", kernel_borchardt), ("cauchy", kernel_cauchy)):
        p = leaf(g, name, func, f"{name} identity, both sides")
        p.add_argument("--xs", type=_number_list, required=True)
        p.add_argument("--ys", type=_number_list, required=True)

    # logistic
    g = groups.add_parser("logistic", help="generalised logistic density").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "eval", logistic_eval, "density value")
    alpha_arg(p)
    p.add_argument("--x", type=_rational, required=True)
    p = leaf(g, "mgf-check", logistic_mgf, "transform identity by quadrature")
    alpha_arg(p)
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--check-tol", type=float, default=1e-6)

    # cheb
    g = groups.add_parser("cheb", help="Chebyshev quotients").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "u", cheb_u, "U_k")
    alpha_arg(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("direct", "recurrence"), default="direct")
    p = leaf(g, "v", cheb_v, "V_n = U_1 ... U_n")
    alpha_arg(p)
    p.add_argument("--n", type=int, required=True)
    p = leaf(g, "qfact", cheb_qfact, "q-factorial")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)

    # asm
    g = groups.add_parser("asm", help="alternating sign matrices").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "count", asm_count, "number of n x n ASMs")
    p.add_argument("--n", type=int, required=True)
    p = leaf(g, "stats", asm_stats, "statistics of one matrix")
    p.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")
    p = leaf(g, "znk", asm_znk, "coefficients of Z_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = leaf(g, "group", asm_group, "counts by (mu, nu)")
    p.add_argument("--n", type=int, required=True)
    p = leaf(g, "ik-check", asm_ik, "Izergin-Korepin: determinant vs ASM sum")
    p.add_argument("--q", type=_rational, required=True)
    p.add_argument("--xs", type=_number_list, required=True)
    p.add_argument("--ys", type=_number_list, required=True)

    # delta
    p = groups.add_parser("delta", parents=[common], help="derivative determinant")
    p.set_defaults(func=delta_cmd)
    p.add_argument("mode", nargs="?", choices=("value", "origin", "diagonal"), default="value")
    alpha_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational, default=Fraction(1))
    p.add_argument("--y", type=_rational)
    p.add_argument("--route", choices=delta_mod.ROUTES + ("all",), default="lascoux")

    # conj
    g = groups.add_parser("conj", help="conjecture laboratory").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = leaf(g, "fnk", conj_fnk, "F_{n,k}(x, y)")
    alpha_arg(p)
    for flag in ("--n", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p = leaf(g, "fn0", conj_fn0, "product formula for F_{n,0} vs enumeration")
    alpha_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p = leaf(g, "cvec", conj_cvec, "coefficients c_0..c_{2n-2}")
    alpha_arg(p)
    p.add_argument("--n", type=int, required=True)
    p = leaf(g, "band", conj_band, "band matrix B_{alpha,n}")
    alpha_arg(p, required=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--symbolic", action="store_true", help="print the U-combinations instead of values")
    p = leaf(g, "check-tp", conj_check_tp, "all minors of B_{alpha,n}")
    alpha_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-order", type=int)
    p.add_argument("--tol", type=float, default=1e-30)
    p.add_argument("--rigorous", action="store_true", help="recompute near-zero minors at doubled precision")
    for name, func in (("scan1", conj_scan1), ("scan-theorem", conj_scan_theorem)):
        p = leaf(g, name, func, "grid scan")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--alphas", type=_number_list, required=True)
        p.add_argument("--ratios", type=int, default=13, help="number of y/x grid points")
        p.add_argument("--log10-min", type=float, default=-3.0)
        p.add_argument("--log10-max", type=float, default=3.0)
        if name == "scan-theorem":
            p.add_argument("--route", choices=("lascoux", "asm"), default="lascoux")
    return parser


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(dumps({"error": {"type": kind, "message": message, "exitCode": code}}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.group == "conj" and args.cmd == "band" and not args.symbolic and args.alpha is None:
            raise UsageError("conj band needs --alpha unless --symbolic is given")
        cfg = CliConfig(
            precision_bits=getattr(args, "precision_bits", None) or _default_bits(),
            tol_rel=getattr(args, "tol_rel", 1e-20),
            seed=getattr(args, "seed", 42),
            format=getattr(args, "format", "json"),
        )
        with workprec(cfg.precision_bits):
            out = args.func(args, cfg)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except ConvergenceError as exc:
        return _error("convergence", str(exc), EXIT_NUMERIC)
    except (ValueError, CapExceededError, PoleError, TypeError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_USAGE)
    if cfg.format == "csv":
        sys.stdout.write(out.csv if out.csv is not None else _flat_csv(out.payload))
    else:
        sys.stdout.write(dumps(out.payload) + "\n")
    return EXIT_VIOLATION if out.violated else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
