"""Command-line frontend.

Every subcommand prints one JSON document (or an indented text rendering with
``--text``). Exit codes: 0 success, 1 invalid input, 2 an exact identity that
must hold did not.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from mpmath.ctx_mp import MPContext

from .arith import Surd
from .cf import PCF, ConvergenceReport, convergence_check, pcf_value
from .errors import InvalidInputError, PicfError, VerificationError
from .families import Family, family_eval, family_picf, family_rpcf
from .pell import (
    check_convergent_fundamentality,
    closed_form_solution,
    fundamental_solution,
    is_fundamental,
    sqrt_rcf,
    unit_power,
)
from .tower import DEFAULT_ITERS, DEFAULT_PRECISION, TowerElem, verify_tower_pcf
from .variety import brute_force_points, enumerate_points

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2
NUMERIC_DIGITS = 30


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# --- serialization ------------------------------------------------------------


def _frac(x) -> str:
    return str(x)


def surd_json(v: Surd) -> dict[str, Any]:
    return {"a": _frac(v.a), "b": _frac(v.b), "m": v.m, "text": str(v)}


def pcf_json(p: PCF) -> dict[str, Any]:
    return {"preperiod": list(p.preperiod), "period": list(p.period), "text": str(p)}


def certificate_json(r: ConvergenceReport) -> dict[str, Any]:
    E = r.matrix
    return {
        "verdict": r.verdict,
        "E": [[E.e11, E.e12], [E.e21, E.e22]],
        "cond1": r.cond1,
        "cond2": r.cond2,
        "shift_entries": [[a, b] for a, b in r.shifts],
        "cond3": r.cond3,
        "signed_trace_square": r.trace_term,
    }


def tower_json(x: TowerElem) -> dict[str, Any]:
    return {"level": x.level, "coords": list(x.coords), "text": str(x)}


def numeric_json(ctx: MPContext, x, bits: int) -> dict[str, Any]:
    return {"approx": ctx.nstr(x, NUMERIC_DIGITS), "precision_bits": bits}


def _ordinal(i: int) -> str:
    suffix = "th" if 10 <= i % 100 <= 20 else {1: "st", 2: "nd", 3: "rd"}.get(i % 10, "th")
    return f"{i}{suffix}"


def _expansion_json(p: PCF, m: int) -> tuple[dict[str, Any], bool]:
    """Certificate and exact value of ``p``; the flag is False if the value is not +-sqrt(m)."""
    cert = convergence_check(p)
    out: dict[str, Any] = {"pcf": pcf_json(p), "certificate": certificate_json(cert)}
    if not cert.converges:
        out["value"] = None
        out["sign"] = None
        return out, False
    v = pcf_value(p)
    root = Surd.sqrt(m)
    sign = 1 if v == root else -1 if v == -root else 0
    out["value"] = surd_json(v)
    out["sign"] = sign
    return out, sign != 0


# --- subcommands ------------------------------------------------------------------


def cmd_expand(args) -> tuple[dict, list, bool]:
    return {"expansion": pcf_json(sqrt_rcf(args.m))}, [], True


def cmd_picf(args) -> tuple[dict, list, bool]:
    ok = True
    rows = []
    for pt in enumerate_points(args.m, args.period):
        row, good = _expansion_json(pt.as_pcf(), args.m)
        ok &= good
        rows.append({"point": list(pt.coords), **row})
    return {"count": len(rows), "expansions": rows}, [], ok


def cmd_variety(args) -> tuple[dict, list, bool]:
    closed = enumerate_points(args.m, args.l)
    out: dict[str, Any] = {"closed_form": [list(p.coords) for p in closed]}
    ok = True
    if args.brute is not None:
        brute = brute_force_points(args.m, args.l, args.brute, workers=args.jobs)
        in_box = [p for p in closed if max(map(abs, p.coords)) <= args.brute]
        equal = in_box == brute
        ok = equal
        out["brute_force"] = {"bound": args.brute, "points": [list(p.coords) for p in brute], "equal": equal}
    return out, [], ok


def cmd_pell(args) -> tuple[dict, list, bool]:
    f = fundamental_solution(args.m)
    ok = f.x * f.x - args.m * f.y * f.y == f.norm
    return {"expansion": pcf_json(sqrt_rcf(args.m)), "fundamental": {"x": f.x, "y": f.y, "norm": f.norm}}, [], ok


def cmd_family(args) -> tuple[dict, list, bool]:
    fam, s, t = Family(args.family), args.s, args.t
    m = family_eval(fam, s, t)
    forms = []
    ok = True
    for e in family_picf(fam, s, t):
        row, good = _expansion_json(e.pcf, m)
        good = good and row["sign"] == e.sign
        ok &= good
        forms.append({"form": e.form, "period_is_minimal": e.minimal, "expected_sign": e.sign, **row})
    try:
        rpcf: dict[str, Any] | None = pcf_json(family_rpcf(fam, s, t))
    except InvalidInputError:
        rpcf = None
    sol = closed_form_solution(fam, s, t)
    sol_out: dict[str, Any] = {"x": sol.x, "y": sol.y, "norm": sol.norm}
    if sol.norm in (1, -1):
        sol_out["fundamental"] = is_fundamental(m, sol.x, sol.y)
        sol_out["power"] = unit_power(m, sol.x, sol.y)
    rep = check_convergent_fundamentality(fam, s, t)
    checks = [
        {
            "form": c.form,
            "index": c.index,
            "x": c.solution.x,
            "y": c.solution.y,
            "norm": c.solution.norm,
            "fundamental": c.fundamental,
            "power": c.power,
        }
        for c in rep.checks
    ]
    summary = [
        f"fundamental{'' if c.fundamental else ' NOT'} at {_ordinal(c.index)} convergent ({c.form})"
        for c in rep.checks
    ]
    zeroth = None
    if rep.zeroth is not None:
        z = rep.zeroth
        zeroth = {"x": z.solution.x, "y": z.solution.y, "norm": z.solution.norm, "fundamental": z.fundamental}
        summary.append(f"fundamental{'' if z.fundamental else ' NOT'} at 0th")
    errata = []
    if rep.erratum_candidate:
        errata.append({"erratum_candidate": rep.erratum_candidate})
    out = {
        "m": m,
        "picf": forms,
        "rpcf": rpcf,
        "closed_form_solution": sol_out,
        "fundamental_solution": {"x": rep.fundamental.x, "y": rep.fundamental.y, "norm": rep.fundamental.norm},
        "convergent_check": {
            "minimal_period": rep.minimal_period,
            "checks": checks,
            "zeroth": zeroth,
            "predicted_fundamental": rep.predicted,
            "agrees": rep.agrees,
            "summary": "; ".join(summary),
        },
    }
    return out, errata, ok


def cmd_tower(args) -> tuple[dict, list, bool]:
    if args.n < 1:
        raise InvalidInputError(f"n must be >= 1, got {args.n}")
    rep = verify_tower_pcf(args.n, args.precision, args.iters)
    ctx = MPContext()
    ctx.prec = args.precision
    tr = rep.triple
    out = {
        "triple": {"level": args.n - 1, "x1": tower_json(tr.x1), "x2": tower_json(tr.x2), "x3": tower_json(tr.x3)},
        "exact": {
            "fixed_point_residual_zero": rep.fixed_point_ok,
            "relative_norm_eta": tower_json(rep.eta_norm),
            "relative_norm_is_minus_one": rep.norm_ok,
            "p2": tower_json(rep.p2),
            "q2": tower_json(rep.q2),
            "p2_plus_X_q2_is_eta": rep.convergent_identity,
        },
        "numeric": {
            "iters": rep.iters,
            "tolerance": "1e-10",
            "embeddings": [
                {
                    "k": e.k,
                    "sigma_X": numeric_json(ctx, e.sigma_x, args.precision),
                    "sigma_eta": numeric_json(ctx, e.sigma_eta, args.precision),
                    "expected_sign": e.expected_sign,
                    "limit": numeric_json(ctx, e.limit, args.precision),
                    "error": {"approx": ctx.nstr(e.error, 5), "precision_bits": args.precision},
                    "ok": e.ok,
                }
                for e in rep.embeddings
            ],
        },
    }
    return out, [], rep.ok


# --- driver -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for brute-force search")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing (not byte-stable)")

    parser = _Parser(prog="picf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expand", parents=[common], help="regular expansion of sqrt(m)")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("picf", parents=[common], help="all (1,l)-type PICF expansions of sqrt(m)")
    p.add_argument("m", type=int)
    p.add_argument("--period", type=int, required=True, choices=(1, 2, 3))
    p.set_defaults(func=cmd_picf)

    p = sub.add_parser("variety", parents=[common], help="integer points on the (1,l) variety")
    p.add_argument("m", type=int)
    p.add_argument("l", type=int, choices=(1, 2, 3))
    p.add_argument("--brute", type=int, metavar="B", help="also run the box search with bound B")
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("pell", parents=[common], help="fundamental solution of x^2 - m y^2 = +-1")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("family", parents=[common], help="closed forms for one family member")
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("tower", parents=[common], help="period-3 expansion of X_n over Z[X_(n-1)]")
    p.add_argument("n", type=int)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, metavar="P")
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS, metavar="I")
    p.set_defaults(func=cmd_tower)
    return parser


def _inputs(args) -> dict[str, Any]:
    skip = {"func", "command", "text", "jobs", "timing"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        if "text" in obj:
            return [pad + str(obj["text"])]
        lines = []
        for k, v in obj.items():
            sub = _render_text(v, indent + 1)
            if len(sub) == 1:
                lines.append(f"{pad}{k}: {sub[0].strip()}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(sub)
        return lines
    if isinstance(obj, list):
        if not any(isinstance(v, dict) for v in obj):
            return [pad + json.dumps(obj)]
        lines = []
        for v in obj:
            sub = _render_text(v, indent + 1) or [""]
            lines.append(f"{pad}- {sub[0].strip()}")
            lines.extend(sub[1:])
        return lines
    return [pad + str(obj)]


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one invocation; returns the exit code and the text for standard output."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        outputs, errata, ok = args.func(args)
    except VerificationError as exc:
        return EXIT_VERIFY, json.dumps({"command": args.command, "error": str(exc)}) + "\n"
    except InvalidInputError as exc:
        return EXIT_INVALID, json.dumps({"command": args.command, "error": str(exc)}) + "\n"
    except PicfError as exc:
        return EXIT_VERIFY, json.dumps({"command": args.command, "error": str(exc)}) + "\n"
    doc: dict[str, Any] = {
        "command": args.command,
        "inputs": _inputs(args),
        "outputs": outputs,
        "errata": errata,
        "verified": ok,
    }
    if args.timing:
        doc["timing_seconds"] = round(time.perf_counter() - start, 6)
    if args.text:
        text = "\n".join(_render_text(doc)) + "\n"
    else:
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return (EXIT_OK if ok else EXIT_VERIFY), text


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code != EXIT_INVALID else sys.stderr
    stream.buffer.write(text.encode("utf-8")) if hasattr(stream, "buffer") else stream.write(text)
    stream.flush()
    return code
