"""Command-line front end.

Exit status is 0 on success, 1 on a domain error (the error identifier is
printed on stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import cf, diagrams, equivariant, surfaces
from .errors import EqGenusError

SCHEMA_VERSION = 1


def _arg(parser_fn, what):
    def convert(text):
        try:
            return parser_fn(text)
        except (EqGenusError, ValueError) as exc:
            raise argparse.ArgumentTypeError(f"invalid {what} {text!r}: {exc}") from None

    convert.__name__ = what
    return convert


def _positive(text):
    v = int(text)
    if v < 1:
        raise ValueError("must be at least 1")
    return v


SLOPE = _arg(cf.parse_slope, "fraction")
EXPANSION = _arg(cf.parse_expansion, "expansion")
BRAID = _arg(diagrams.parse_braid, "braid")
THREADS = _arg(_positive, "thread count")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise argparse.ArgumentTypeError(f"cannot read {path!r}: {exc.strerror}") from None


def _schema(props: dict) -> dict:
    base = {"schema_version": {"const": SCHEMA_VERSION}, "command": {"type": "string"}}
    return {"type": "object", "properties": {**base, **props},
            "required": sorted({*base, *props}), "additionalProperties": False}


_INT = {"type": "integer"}
_STR = {"type": "string"}
_BOOL = {"type": "boolean"}
_EXP = {"type": "array", "items": _INT}
_CERT = {
    "type": "object",
    "properties": {"condition_c": _BOOL, "betti_quotient": _INT, "betti_lift": _INT,
                   "lift_genus": {"type": ["integer", "null"]}},
    "required": ["condition_c", "betti_quotient", "betti_lift", "lift_genus"],
}

# JSON output schema of every subcommand
SCHEMAS = {
    "cf eval": _schema({"expansion": _EXP, "fraction": _STR}),
    "cf even": _schema({"fraction": _STR, "expansion": _EXP}),
    "cf minlen": _schema({"fraction": _STR, "length": _INT, "expansions": {"type": "array", "items": _EXP}}),
    "cf htcheck": _schema({"expansion": _EXP, "minimal": _BOOL}),
    "twobridge genus": _schema({"fraction": _STR, "genus": _INT}),
    "twobridge band": _schema({"fraction": _STR, "band_number": _INT}),
    "twobridge equiv": _schema({"first": _STR, "second": _STR, "equivalent": _BOOL}),
    "diagram genus": _schema({"braid": _STR, "plat": {"type": ["string", "null"]}, "circles": _INT,
                              "crossings": _INT, "betti": _INT, "genus": _INT}),
    "surface check": _schema({"bands": _INT, "boundary_components": _INT, "condition_c": _BOOL}),
    "surface lift": _schema(_CERT["properties"]),
    "surface hiura": _schema({"presentation": _STR, "certificate": _CERT,
                              "quotient_trivial": {"type": ["boolean", "null"]}}),
    "equiv report": _schema({k: v for k, v in equivariant.REPORT_SCHEMA["properties"].items()
                             if k != "schema_version"}),
    "equiv count": _schema({"class": _STR, "count": _INT}),
    "equiv table": _schema({
        "family": _STR,
        "rows": {"type": "array", "items": {
            "type": "object",
            "properties": {"n": _INT, "genus": _INT, "eq_lower": _INT, "eq_upper": _INT,
                           "eq_genus": {"type": ["integer", "null"]}, "gap": _INT, "exact": _BOOL},
            "required": ["n", "genus", "eq_lower", "eq_upper", "eq_genus", "gap", "exact"],
        }},
    }),
}


# -- handlers ------------------------------------------------------------------------
# each returns (json payload, human text)

def cmd_cf_eval(a):
    f = cf.cf_eval(a.expansion)
    return {"expansion": list(a.expansion), "fraction": str(f)}, str(f)


def cmd_cf_even(a):
    e = cf.even_expansion(a.fraction)
    return {"fraction": str(a.fraction), "expansion": list(e)}, cf.format_expansion(e)


def cmd_cf_minlen(a):
    b = cf.band_number(a.fraction)
    exps = cf.minimal_reduced_expansions(a.fraction) if b else []
    text = "\n".join([str(b)] + [cf.format_expansion(e) for e in exps])
    return {"fraction": str(a.fraction), "length": b, "expansions": [list(e) for e in exps]}, text


def cmd_cf_htcheck(a):
    ok = cf.ht_minimality_check(a.expansion)
    return {"expansion": list(a.expansion), "minimal": ok}, "true" if ok else "false (inconclusive)"


def cmd_tb_genus(a):
    g = cf.genus_2bridge(a.fraction)
    return {"fraction": str(a.fraction), "genus": g}, str(g)


def cmd_tb_band(a):
    b = cf.band_number(a.fraction)
    return {"fraction": str(a.fraction), "band_number": b}, str(b)


def cmd_tb_equiv(a):
    eq = cf.equivalent(a.first, a.second)
    return {"first": str(a.first), "second": str(a.second), "equivalent": eq}, str(eq).lower()


def cmd_diagram_genus(a):
    d = diagrams.plat_closure(a.braid, top=a.plat) if a.plat else diagrams.braid_closure(a.braid)
    sd = diagrams.seifert_smooth(d)
    g = diagrams.seifert_genus(d)
    b = diagrams.seifert_betti(d)
    payload = {"braid": str(a.braid), "plat": a.plat, "circles": sd.circle_count,
               "crossings": sd.crossing_count, "betti": b, "genus": g}
    return payload, f"genus {g} (circles {sd.circle_count}, crossings {sd.crossing_count}, betti {b})"


def _presentation(a):
    return surfaces.loads(_read(a.file))


def cmd_surface_check(a):
    bp = _presentation(a)
    r = surfaces.boundary_components(bp)
    ok = surfaces.condition_c_check(bp)
    payload = {"bands": surfaces.betti(bp), "boundary_components": r, "condition_c": ok}
    return payload, f"bands {payload['bands']}\nboundary circles {r}\ncondition C {str(ok).lower()}"


def cmd_surface_lift(a):
    cert = surfaces.lift_certificate(_presentation(a))
    lines = [f"{k.replace('_', ' ')} {str(v).lower() if isinstance(v, bool) else ('-' if v is None else v)}"
             for k, v in cert.as_dict().items()]
    return cert.as_dict(), "\n".join(lines)


def cmd_surface_hiura(a):
    tq = surfaces.theta_loads(_read(a.file))
    bp = surfaces.hiura_construct(tq)
    cert = surfaces.lift_certificate(bp)
    trivial = surfaces.quotient_is_trivial_knot(tq)
    text = surfaces.dumps(bp)
    payload = {"presentation": text, "certificate": cert.as_dict(), "quotient_trivial": trivial}
    return payload, text.rstrip("\n")


def _report_text(r: equivariant.GenusReport) -> str:
    fmt = lambda v: "-" if v is None else str(v)  # noqa: E731
    lines = [
        f"usual genus  {r.usual_genus}",
        f"eq lower     {fmt(r.eq_lower)}",
        f"eq upper     {fmt(r.eq_upper)}",
        f"exact        {str(r.exact).lower()}",
        f"gap          {r.gap}",
    ]
    lines += [f"  - {p}" for p in r.provenance]
    return "\n".join(lines)


def cmd_equiv_report(a):
    if a.file:
        inp = equivariant.load_input(a.file)
    elif a.family == "kn":
        if a.n is None:
            raise argparse.ArgumentTypeError("--family kn requires --n")
        inp = equivariant.kn_input(a.n)
    elif a.family == "eight_three":
        inp = equivariant.eight_three_input()
    else:
        raise argparse.ArgumentTypeError("give --family or --file")
    r = equivariant.report(inp)
    return r.as_dict(), _report_text(r)


def cmd_equiv_count(a):
    c = equivariant.marked_sik_count(a.cls)
    return {"class": a.cls, "count": c}, str(c)


def _kn_row(n):
    return equivariant.report(equivariant.kn_input(n))


def cmd_equiv_table(a):
    if a.max < 1:
        raise equivariant.NonPositiveN(f"--max must be positive, got {a.max}")
    with ThreadPoolExecutor(max_workers=a.threads) as pool:
        reports = list(pool.map(_kn_row, range(1, a.max + 1)))
    rows = [{"n": r.n, "genus": r.usual_genus, "eq_lower": r.eq_lower, "eq_upper": r.eq_upper,
             "eq_genus": r.eq_genus, "gap": r.gap, "exact": r.exact} for r in reports]
    head = f"{'n':>3} {'g':>4} {'lower':>6} {'upper':>6} {'eq':>4} {'gap':>4}"
    body = [f"{r['n']:>3} {r['genus']:>4} {r['eq_lower']:>6} {r['eq_upper']:>6} "
            f"{r['eq_genus'] if r['eq_genus'] is not None else '-':>4} {r['gap']:>4}" for r in rows]
    return {"family": a.family, "rows": rows}, "\n".join([head] + body)


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--threads", type=THREADS, default=argparse.SUPPRESS, metavar="N",
                        help="worker threads (results do not depend on N)")

    p = argparse.ArgumentParser(prog="eqgenus", description="Equivariant genera of strongly invertible knots.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=THREADS, default=1, metavar="N", help="worker threads")
    top = p.add_subparsers(dest="group", required=True, metavar="{cf,twobridge,diagram,surface,equiv}")

    def group(name, help_):
        g = top.add_parser(name, help=help_)
        return g.add_subparsers(dest="cmd", required=True)

    def leaf(sub, name, handler, help_):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.set_defaults(handler=handler)
        return q

    g = group("cf", "continued fractions")
    leaf(g, "eval", cmd_cf_eval, "evaluate an expansion").add_argument("expansion", type=EXPANSION)
    leaf(g, "even", cmd_cf_even, "even expansion of a slope").add_argument("fraction", type=SLOPE)
    leaf(g, "minlen", cmd_cf_minlen, "shortest reduced expansions").add_argument("fraction", type=SLOPE)
    leaf(g, "htcheck", cmd_cf_htcheck, "sufficient minimality test").add_argument("expansion", type=EXPANSION)

    g = group("twobridge", "2-bridge knot invariants")
    leaf(g, "genus", cmd_tb_genus, "genus").add_argument("fraction", type=SLOPE)
    leaf(g, "band", cmd_tb_band, "band number").add_argument("fraction", type=SLOPE)
    q = leaf(g, "equiv", cmd_tb_equiv, "slope equivalence")
    q.add_argument("first", type=SLOPE)
    q.add_argument("second", type=SLOPE)

    g = group("diagram", "diagram invariants")
    q = leaf(g, "genus", cmd_diagram_genus, "Seifert-algorithm genus")
    q.add_argument("--braid", type=BRAID, required=True)
    q.add_argument("--plat", nargs="?", const="standard", choices=["standard", "shifted"],
                   help="plat closure instead of trace closure; 'shifted' caps the top as (2,3),...,(1,2k)")

    g = group("surface", "quotient surfaces")
    leaf(g, "check", cmd_surface_check, "boundary and Condition (C)").add_argument("file")
    leaf(g, "lift", cmd_surface_lift, "lift certificate").add_argument("file")
    leaf(g, "hiura", cmd_surface_hiura, "build a surface from a theta normal form").add_argument("file")

    g = group("equiv", "equivariant genus")
    q = leaf(g, "report", cmd_equiv_report, "genus report")
    q.add_argument("--family", choices=["kn", "eight_three"])
    q.add_argument("--n", type=int)
    q.add_argument("--file")
    leaf(g, "count", cmd_equiv_count, "marked strongly invertible knot count").add_argument(
        "cls", metavar="class", choices=sorted(equivariant.MARKED_COUNTS))
    q = leaf(g, "table", cmd_equiv_table, "K_n family table")
    q.add_argument("--family", choices=["kn"], required=True)
    q.add_argument("--max", type=int, required=True)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.handler(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(err)
        print(f"eqgenus: error: {exc}", file=err)
        return 2
    except EqGenusError as exc:
        print(f"error[{exc.code}]: {exc}", file=err)
        return 1
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, "command": f"{args.group} {args.cmd}", **payload}
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
