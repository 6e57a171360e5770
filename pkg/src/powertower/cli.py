"""Command-line interface: ``powertower <command> ...``.

Commands: solve-xx, curve, tower, rational {qq|curvepoint|towerfix}, classify,
plotdata. Each invocation produces either readable text or, with
``--format record``, exactly one JSON object with the fields
``command, inputs, results, citations, precision, digits``.

Exit codes: 0 success, 2 domain error, 3 parse error.
Defaults can be set with ``POWERTOWER_PRECISION``, ``POWERTOWER_DIGITS``,
``POWERTOWER_FORMAT`` and ``POWERTOWER_ASSUME_SCHANUEL``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

from . import classify as cl
from .expr import ExprError, ParseError, Rat, UnsupportedForm, parse_expr
from .rational import (
    curve_rational_point,
    format_rational,
    is_curve_pair,
    parse_rational,
    qq_nature,
    tower_fix_rational_solutions,
)
from .real import (
    BigReal,
    DomainError,
    Precision,
    _const,
    as_mpf,
    constant,
    g,
    log_z_of_t,
    solve_curve,
    solve_x_pow_x,
    x_of_t,
    y_of_t,
)
from .rules import RULES
from .tower import TowerMode, tower_h, tower_odd_even

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _env_default(name: str, fallback: str) -> str:
    return os.environ.get(f"POWERTOWER_{name}", fallback)


class _Parser(argparse.ArgumentParser):
    """Argument parser that accepts ``-1/2`` or ``-1+sqrt(3)`` as positional values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(?!-)(?!h$).+")


def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--precision", type=int, default=sup, help="working precision in bits (default 128)")
    common.add_argument("--digits", type=int, default=sup, help="printed significant digits (default 6)")
    common.add_argument("--format", choices=("text", "record"), default=sup, help="output format")
    common.add_argument(
        "--assume-schanuel", action="store_true", default=sup,
        help="upgrade 'at least one transcendental' verdicts assuming Schanuel's conjecture",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="powertower",
        description="Solve x^x=A, x^y=y^x=A, evaluate infinite power towers, classify the results.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-xx", parents=[common], help="all positive roots of x^x = A")
    p.add_argument("expr")

    p = sub.add_parser("curve", parents=[common], help="the pair x < y with x^y = y^x = A")
    p.add_argument("expr", nargs="?")
    p.add_argument("--t", dest="t", help="evaluate at a rational parameter t instead")

    p = sub.add_parser("tower", parents=[common], help="infinite power tower h(x)")
    p.add_argument("expr")
    p.add_argument("--odd-even", action="store_true", help="odd/even height limits h_o, h_e")
    p.add_argument("--method", choices=("fixed-point", "iteration"), default="fixed-point")

    p = sub.add_parser("rational", parents=[common], help="exact Diophantine procedures")
    rsub = p.add_subparsers(dest="subcommand", required=True)
    q = rsub.add_parser("qq", parents=[common], help="nature of Q^Q")
    q.add_argument("q")
    q = rsub.add_parser("curvepoint", parents=[common], help="rational point n, or test a pair")
    q.add_argument("args", nargs="+")
    q = rsub.add_parser("towerfix", parents=[common], help="rational Q1 with Q^(Q^Q1) = Q1")
    q.add_argument("q")
    q.add_argument("q1", nargs="?")

    p = sub.add_parser("classify", parents=[common], help="arithmetic nature of an expression")
    p.add_argument("expr")

    p = sub.add_parser("plotdata", parents=[common], help="data table for a figure (1-6)")
    p.add_argument("figure", type=int, choices=range(1, 7))
    p.add_argument("--resolution", type=int, default=200)
    p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"))
    return parser


def _settings(args) -> None:
    if not hasattr(args, "precision"):
        args.precision = int(_env_default("PRECISION", "128"))
    if not hasattr(args, "digits"):
        args.digits = int(_env_default("DIGITS", "6"))
    if not hasattr(args, "format"):
        args.format = _env_default("FORMAT", "text")
    if not hasattr(args, "assume_schanuel"):
        args.assume_schanuel = _env_default("ASSUME_SCHANUEL", "0").lower() in ("1", "true", "yes")
    if args.digits < 1:
        raise CommandError("--digits must be positive", EXIT_PARSE)
    try:
        args.prec = Precision(args.precision)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None
    # Cannot print more digits than the precision carries.
    args.digits = min(args.digits, int(args.precision * math.log10(2)))


def _parse(text: str):
    try:
        return parse_expr(text)
    except ExprError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None


def _record(command, inputs, results, citations, args) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "citations": sorted(set(citations)),
        "precision": args.precision,
        "digits": args.digits,
    }


def _cite(*verdicts) -> list[str]:
    out = []
    for v in verdicts:
        out.extend(v.rules)
    return out


def _fmt(x: BigReal, args) -> str:
    return x.format(args.digits)


# ---- commands -----------------------------------------------------------------


def cmd_solve_xx(args) -> tuple[dict, list[str]]:
    a = _parse(args.expr)
    prec = args.prec
    sols = solve_x_pow_x(a, prec)
    verdicts = {rv.branch: rv.verdict for rv in cl.classify_xx_solutions(a, prec)}
    value = a.evaluate(prec)
    roots = []
    lines = [f"x^x = {a}   (A = {_fmt(value, args)})"]
    if sols.count == 0:
        v = verdicts["none"]
        threshold = constant("e_to_minus_inv_e", prec).format(args.digits)
        lines.append(f"  no real solution: x^x >= e^(-1/e) = {threshold} for x > 0")
        lines.append(f"  rules: {', '.join(v.rules)}")
        results = {
            "A": _fmt(value, args), "count": 0, "degenerate": False, "roots": [],
            "threshold": threshold, "verdict": v.to_dict(),
        }
        return _record("solve-xx", {"expr": str(a)}, results, _cite(v), args), lines
    for branch, root in (("lower", sols.lower), ("upper", sols.upper)):
        if root is None:
            continue
        v = verdicts.get(branch, cl._UNKNOWN)
        exact = v.witness_text() if v.nature is cl.Nature.RATIONAL else None
        shown = f"{exact} (exact)" if exact else _fmt(root, args)
        lines.append(f"  {branch:5s} root  {shown:24s} {v.nature.value}")
        lines.append(f"               rules: {', '.join(v.rules) or '-'}")
        roots.append({"branch": branch, "value": _fmt(root, args), "exact": exact, "verdict": v.to_dict()})
    if sols.degenerate:
        lines.append("  (double root at 1/e: A is within 2^(-bits/2) of e^(-1/e))")
    results = {"A": _fmt(value, args), "count": sols.count, "degenerate": sols.degenerate, "roots": roots}
    cites = _cite(*verdicts.values())
    return _record("solve-xx", {"expr": str(a)}, results, cites, args), lines


def cmd_curve(args) -> tuple[dict, list[str]]:
    prec = args.prec
    if args.t is not None:
        if args.expr is not None:
            raise CommandError("give either an expression A or --t, not both", EXIT_PARSE)
        t = _rational_arg(args.t)
        if t <= 0:
            raise CommandError("curve parameter t must be positive", EXIT_DOMAIN)
        at = cl.classify_curve_at_t(t)
        x, y = x_of_t(t, prec), y_of_t(t, prec)
        z = BigReal(prec.ctx.exp(log_z_of_t(t, prec).value), prec)
        lines = [f"t = {format_rational(t)}"]
        for name, num, v in (("x", x, at.x), ("y", y, at.y), ("x^y", z, at.value)):
            exact = v.witness_text()
            shown = f"{exact} (exact)" if exact and v.nature is cl.Nature.RATIONAL else _fmt(num, args)
            if exact and v.nature is not cl.Nature.RATIONAL:
                shown = f"{exact} = {_fmt(num, args)}"
            lines.append(f"  {name:4s} {shown:30s} {v.nature.value}")
        def shown_value(num, v):
            exact = v.nature is cl.Nature.RATIONAL and v.witness is not None
            return format_rational(v.witness) if exact else _fmt(num, args)

        results = {
            "t": format_rational(t),
            "x": shown_value(x, at.x), "y": shown_value(y, at.y), "value": _fmt(z, args),
            "x_verdict": at.x.to_dict(), "y_verdict": at.y.to_dict(), "value_verdict": at.value.to_dict(),
        }
        return _record("curve", {"t": format_rational(t)}, results, _cite(*at), args), lines

    if args.expr is None:
        raise CommandError("curve needs an expression A or --t", EXIT_PARSE)
    a = _parse(args.expr)
    sol = solve_curve(a, prec)
    v = cl.classify_curve_pair(a, prec, args.assume_schanuel)
    lines = [f"x^y = y^x = {a}   (A = {_fmt(a.evaluate(prec), args)})"]
    t_text = _fmt(sol.t, args)
    if v.nature is cl.Nature.RATIONAL:
        wx, wy = v.witness
        t_text = f"{format_rational(wx / (wy - wx))} (exact)"
    lines.append(f"  t = {t_text}")
    if v.nature is cl.Nature.RATIONAL:
        ex, ey = (format_rational(w) for w in v.witness)
        lines.append(f"  x = {ex} (exact)   y = {ey} (exact)")
    else:
        lines.append(f"  x = {_fmt(sol.x, args)}   y = {_fmt(sol.y, args)}")
    lines.append(f"  {v.nature.value}   rules: {', '.join(v.rules) or '-'}")
    results = {
        "A": _fmt(a.evaluate(prec), args),
        "t": t_text.removesuffix(" (exact)"),
        "x": format_rational(v.witness[0]) if v.nature is cl.Nature.RATIONAL else _fmt(sol.x, args),
        "y": format_rational(v.witness[1]) if v.nature is cl.Nature.RATIONAL else _fmt(sol.y, args),
        "verdict": v.to_dict(),
    }
    return _record("curve", {"expr": str(a)}, results, _cite(v), args), lines


def cmd_tower(args) -> tuple[dict, list[str]]:
    prec = args.prec
    a = _parse(args.expr)
    method = args.method.replace("-", "_")
    if args.odd_even:
        tv = tower_odd_even(a, prec, method)
    else:
        tv = tower_h(a, prec, method)
    lines = [f"x = {a}   (x = {_fmt(a.evaluate(prec), args)})   method: {method}"]
    verdicts = {}
    if tv.mode is TowerMode.OUT_OF_DOMAIN:
        edge = constant("e_to_inv_e", prec).format(args.digits)
        lines.append(f"  out of domain: the tower diverges for x > e^(1/e) = {edge}")
        verdicts["h"] = cl.Verdict(cl.Nature.OUT_OF_DOMAIN, ("tower-domain",))
    elif tv.mode is TowerMode.CONVERGED_H:
        v = cl.classify_tower(a, prec)
        verdicts["h"] = v
        shown = f"{v.witness_text()} (exact)" if v.nature is cl.Nature.RATIONAL else _fmt(tv.h, args)
        lines.append(f"  h = {shown:24s} {v.nature.value}")
        lines.append(f"      rules: {', '.join(v.rules) or '-'}")
    else:
        if isinstance(a, Rat):
            ov = cl.classify_tower_odd_even(a.q, prec, args.assume_schanuel)
        else:
            ov = cl.OddEvenVerdict(cl._UNKNOWN, cl._UNKNOWN, cl._UNKNOWN)
        verdicts.update(h_odd=ov.odd, h_even=ov.even, pair=ov.pair)
        for name, val, v in (("h_o", tv.h_odd, ov.odd), ("h_e", tv.h_even, ov.even)):
            shown = f"{v.witness_text()} (exact)" if v.nature is cl.Nature.RATIONAL else _fmt(val, args)
            lines.append(f"  {name} = {shown:24s} {v.nature.value}")
        lines.append(f"  pair: {ov.pair.nature.value}   rules: {', '.join(ov.pair.rules) or '-'}")
    if method == "iteration":
        lines.append(f"  iterations: {tv.iterations}{'' if tv.converged else ' (did not converge)'}")
    if tv.boundary:
        lines.append("  (x lies within 2^(-bits/2) of an endpoint of the convergence interval)")
    results = tv.to_dict(args.digits)
    results["verdicts"] = {k: v.to_dict() for k, v in verdicts.items()}
    inputs = {"expr": str(a), "odd_even": args.odd_even, "method": method}
    return _record("tower", inputs, results, _cite(*verdicts.values()), args), lines


def cmd_rational(args) -> tuple[dict, list[str]]:
    sc = args.subcommand
    if sc == "qq":
        q = _rational_arg(args.q)
        if q == 0:
            raise CommandError("0^0 is undefined", EXIT_DOMAIN)
        nat = qq_nature(q)
        value = None if nat.value is None else format_rational(nat.value)
        lines = [f"Q^Q for Q = {format_rational(q)}: {nat.tag.value}" + (f" = {value}" if value else "")]
        results = {"tag": nat.tag.value, "value": value}
        return _record("rational qq", {"q": format_rational(q)}, results, ["qq-irrational"], args), lines
    if sc == "curvepoint":
        if len(args.args) == 1:
            n = _rational_arg(args.args[0])
            if n.denominator != 1 or n < 1:
                raise CommandError("curvepoint needs a positive integer n", EXIT_DOMAIN)
            x, y = curve_rational_point(int(n))
            lines = [f"n = {n}: (x, y) = ({format_rational(x)}, {format_rational(y)})"]
            results = {"n": int(n), "x": format_rational(x), "y": format_rational(y)}
            return _record("rational curvepoint", {"n": int(n)}, results, ["curve-algebraic-points"], args), lines
        if len(args.args) == 2:
            a1, a2 = (_rational_arg(s) for s in args.args)
            if not 0 < a1 < a2:
                raise CommandError("curvepoint pair needs 0 < A1 < A2", EXIT_DOMAIN)
            n = is_curve_pair(a1, a2)
            text = f"t = {n}" if n is not None else "not a rational curve point"
            lines = [f"({format_rational(a1)}, {format_rational(a2)}): {text}"]
            inputs = {"a1": format_rational(a1), "a2": format_rational(a2)}
            return _record("rational curvepoint", inputs, {"n": n}, ["curve-algebraic-points"], args), lines
        raise CommandError("curvepoint takes n, or a pair A1 A2", EXIT_PARSE)
    q = _rational_arg(args.q)
    if q <= 0:
        raise CommandError("towerfix needs Q > 0", EXIT_DOMAIN)
    sols = sorted(tower_fix_rational_solutions(q))
    shown = "{" + ", ".join(format_rational(s) for s in sols) + "}"
    results = {"solutions": [format_rational(s) for s in sols]}
    inputs = {"q": format_rational(q)}
    lines = [f"rational Q1 with ({format_rational(q)})^(({format_rational(q)})^Q1) = Q1: {shown}"]
    if args.q1 is not None:
        q1 = _rational_arg(args.q1)
        if q1 <= 0:
            raise CommandError("towerfix needs Q1 > 0", EXIT_DOMAIN)
        results["is_solution"] = q1 in sols
        inputs["q1"] = format_rational(q1)
        lines.append(f"  Q1 = {format_rational(q1)}: {'yes' if q1 in sols else 'no'}")
    return _record("rational towerfix", inputs, results, ["odd-even-rational-fixed"], args), lines


def cmd_classify(args) -> tuple[dict, list[str]]:
    prec = args.prec
    a = _parse(args.expr)
    value = a.evaluate(prec)
    own = cl.self_nature(a)
    pnr = cl.powers_never_rational(a)
    lines = [f"{a} = {_fmt(value, args)}", f"  nature: {own.nature.value}   rules: {', '.join(own.rules)}"]
    lines.append(f"  every power A^n irrational: {'yes' if pnr else 'no'}")
    contexts = {"self": own}
    v = as_mpf(a, prec)
    if v >= _const("e_to_minus_inv_e", prec):
        for rv in cl.classify_xx_solutions(a, prec):
            contexts[f"x^x=A ({rv.branch} root)"] = rv.verdict
    if _const("e_to_minus_e", prec) <= v <= _const("e_to_inv_e", prec):
        contexts["tower h(A)"] = cl.classify_tower(a, prec)
    if v > _const("e_to_e", prec):
        contexts["pair x^y=y^x=A"] = cl.classify_curve_pair(a, prec, args.assume_schanuel)
    if isinstance(a, Rat) and 0 < a.q and v <= _const("e_to_minus_e", prec):
        ov = cl.classify_tower_odd_even(a.q, prec, args.assume_schanuel)
        contexts["h_o(A)"], contexts["h_e(A)"] = ov.odd, ov.even
    for name, cv in list(contexts.items())[1:]:
        w = f" = {cv.witness_text()}" if cv.nature is cl.Nature.RATIONAL else ""
        lines.append(f"  {name}: {cv.nature.value}{w}")
    lines.append("  citations:")
    cites = _cite(*contexts.values())
    for rid in sorted(set(cites)):
        lines.append(f"    {rid}: {RULES[rid].name}")
    results = {
        "value": _fmt(value, args),
        "canonical": str(a),
        "nature": own.to_dict(),
        "powers_never_rational": pnr,
        "contexts": {k: cv.to_dict() for k, cv in contexts.items()},
    }
    return _record("classify", {"expr": args.expr}, results, cites, args), lines


_FIGURES = {
    1: ("y = x^x", "x", (0.0, 1.6)),
    2: ("x^y = y^x, both branches off the diagonal", "t", (0.01, 100.0)),
    3: ("x(t) (lower) and y(t)", "t", (0.0, 10.0)),
    4: ("z = x(t)^y(t) = y(t)^x(t)", "t", (0.0, 10.0)),
    5: ("v = g(u) = u^(1/u)", "u", (0.0, 8.0)),
    6: ("y = h(x), infinite power tower", "x", None),
}


def cmd_plotdata(args, out) -> int:
    prec = args.prec
    ctx = prec.ctx
    n = args.resolution
    if n < 2:
        raise CommandError("--resolution must be at least 2", EXIT_PARSE)
    title, var, default = _FIGURES[args.figure]
    if args.range is not None:
        lo, hi = (ctx.mpf(v) for v in args.range)
    elif default is None:
        lo, hi = _const("e_to_minus_e", prec), _const("e_to_inv_e", prec)
    else:
        lo, hi = (ctx.mpf(v) for v in default)
    if not lo < hi:
        raise CommandError("--range needs LO < HI", EXIT_PARSE)
    d = args.digits

    def fmt(v):
        return ctx.nstr(v, d)

    def grid(open_left):
        # Figures with a singular left edge at 0 skip that endpoint.
        if open_left and lo <= 0:
            return [lo + (hi - lo) * k / n for k in range(1, n + 1)]
        return [lo + (hi - lo) * k / (n - 1) for k in range(n)]

    out.write(f"# figure {args.figure}: {title}\n")
    if args.figure == 1:
        out.write("# x  y\n")
        for x in grid(True):
            out.write(f"{fmt(x)} {fmt(ctx.exp(x * ctx.log(x)))}\n")
    elif args.figure == 2:
        out.write("# x  y   (block 1: x < y; block 2: x > y)\n")
        ratio = hi / lo
        ts = [lo * ratio ** (ctx.mpf(k) / (n - 1)) for k in range(n)]
        pts = [(x_of_t(t, prec).value, y_of_t(t, prec).value) for t in ts]
        for x, y in pts:
            out.write(f"{fmt(x)} {fmt(y)}\n")
        out.write("\n\n")
        for x, y in pts:
            out.write(f"{fmt(y)} {fmt(x)}\n")
    elif args.figure == 3:
        out.write("# t  x(t)  y(t)\n")
        for t in grid(True):
            out.write(f"{fmt(t)} {fmt(x_of_t(t, prec).value)} {fmt(y_of_t(t, prec).value)}\n")
    elif args.figure == 4:
        out.write("# t  z(t)\n")
        for t in grid(True):
            out.write(f"{fmt(t)} {fmt(ctx.exp(log_z_of_t(t, prec).value))}\n")
    elif args.figure == 5:
        out.write("# u  g(u)\n")
        for u in grid(True):
            out.write(f"{fmt(u)} {fmt(g(u, prec).value)}\n")
    else:
        out.write("# x  h(x)\n")
        for x in grid(False):
            tv = tower_h(x, prec)
            if tv.mode is TowerMode.CONVERGED_H:
                out.write(f"{fmt(x)} {fmt(tv.h.value)}\n")
            elif tv.mode is TowerMode.SPLIT_ODD_EVEN:
                out.write(f"{fmt(x)} {fmt(tv.h_odd.value)} {fmt(tv.h_even.value)}\n")
    return EXIT_OK


_COMMANDS = {
    "solve-xx": cmd_solve_xx,
    "curve": cmd_curve,
    "tower": cmd_tower,
    "rational": cmd_rational,
    "classify": cmd_classify,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    record_mode = False
    try:
        record_mode = getattr(args, "format", _env_default("FORMAT", "text")) == "record"
        _settings(args)
        if args.command == "plotdata":
            return cmd_plotdata(args, out)
        record, lines = _COMMANDS[args.command](args)
    except CommandError as exc:
        return _fail(args, out, str(exc), exc.code, record_mode)
    except (ParseError, UnsupportedForm) as exc:
        return _fail(args, out, str(exc), EXIT_PARSE, record_mode)
    except (DomainError, ValueError, ArithmeticError) as exc:
        return _fail(args, out, str(exc), EXIT_DOMAIN, record_mode)
    if record_mode:
        out.write(json.dumps(record) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _fail(args, out, message, code, record_mode) -> int:
    if record_mode:
        record = {
            "command": args.command,
            "inputs": {k: v for k, v in vars(args).items() if isinstance(v, (str, int, bool, type(None)))},
            "results": {"error": message, "exit_code": code},
            "citations": [],
            "precision": getattr(args, "precision", None),
            "digits": getattr(args, "digits", None),
        }
        out.write(json.dumps(record) + "\n")
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
