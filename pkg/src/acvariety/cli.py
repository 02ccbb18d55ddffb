"""Command-line entry point: one verb per operation.

Exit codes: 0 success, 1 a verification reported failures, 2 bad usage or
unparsable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from . import batteries, polygons, transforms
from .brackets import BracketError, content, enumerate_strings, parse
from .continuant import identity_failures, u_eval, u_poly, verify_identities
from .polyalg import as_scalar
from .polysets import STYLES, polyset
from .sampling import SampleConfig, SamplingError, sample_point
from .varieties import DenominatorZero, certificate_check, on_ac, rational_parametrization

DEFAULT_SEED = 0xC0FFEE
DEFAULT_COUNT = 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rationals(text: str) -> list[Fraction]:
    try:
        return [as_scalar(t.strip()) for t in text.replace(" ", ",").split(",") if t.strip()]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}") from None


def _scalar(text: str) -> Fraction:
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("AC_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise UsageError(f"AC_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def _s(v) -> str:
    return str(v)


# --- handlers ---------------------------------------------------------------------
# Each returns (params, results, failures, text_lines).

def cmd_u(args):
    if args.mode == "eval":
        vals = _rationals(",".join(args.values))
        r = u_eval(vals)
        return {"values": [_s(v) for v in vals]}, [{"u": _s(r)}], [], [_s(r)]
    if args.range is None:
        raise UsageError("u poly needs --range i j")
    lo, hi = args.range
    nvars = args.nvars if args.nvars is not None else hi
    try:
        p = u_poly(lo, hi, nvars)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"range": [lo, hi], "nvars": nvars}, [{"poly": str(p), "terms": len(p.terms)}], [], [str(p)]


def cmd_identities(args):
    try:
        report = verify_identities(args.nmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fails = identity_failures(report)
    lines = [f"{r['identity']} n={r['n']}{' k=' + str(r['k']) if 'k' in r else ''}: {r['status']}" for r in report]
    lines.append(f"{len(report) - len(fails)}/{len(report)} identities hold")
    return {"nmax": args.nmax}, report, fails, lines


def _parse(text):
    return parse(text)


def cmd_parse(args):
    b = _parse(args.string)
    res = {"string": b.text, "kind": b.kind.value, "n": b.n, "length": len(b), "ambient": len(b) - 1}
    return {"string": args.string}, [res], [], [f"{b.text}: {b.kind.value}_{b.n} (length {len(b)})"]


def cmd_content(args):
    b = _parse(args.string)
    cmap = content(b)
    return {"string": b.text}, [{"content": cmap.render(), "map": json.loads(cmap.to_json())}], [], [cmap.render()]


def cmd_rank(args):
    b = _parse(args.string)
    ranks = {i: b.rank(i) for i in b.left_brackets}
    lines = [f"b{i} {b[i]} rank {r}" for i, r in ranks.items()] + [f"height {b.height}"]
    return ({"string": b.text}, [{"ranks": {str(i): r for i, r in ranks.items()}, "height": b.height}], [],
            lines)


def cmd_enumerate(args):
    strings = enumerate_strings(args.kind, args.n)
    texts = [b.text for b in strings]
    return {"kind": args.kind, "n": args.n}, [{"count": len(texts), "strings": texts}], [], texts + [
        f"{len(texts)} strings"]


def cmd_transform(args):
    if args.kind not in transforms.TRANSFORMS:
        raise UsageError(f"unknown transform {args.kind!r}; choose from {', '.join(transforms.TRANSFORMS)}")
    out = transforms.TRANSFORMS[args.kind](args.string)
    return {"kind": args.kind, "string": args.string}, [{"result": out.text, "type": out.kind.value}], [], [out.text]


def cmd_polyset(args):
    b = _parse(args.string)
    c = _scalar(args.const) if args.const is not None else None
    s = polyset(b, args.style, c)
    return ({"string": b.text, "style": args.style, "const": args.const}, [s.to_json()], [],
            [str(p) for p in s.to_polys()])


def cmd_sample(args):
    b = _parse(args.string)
    c = _scalar(args.const) if args.const is not None else None
    s = polyset(b, args.style, c)
    cfg = SampleConfig(count=args.count, height=args.height, seed=_seed(args))
    pts = sample_point(s, cfg)
    bad = [i for i, p in enumerate(pts) if not s.satisfied_by(p)]
    rows = [[_s(v) for v in p] for p in pts]
    return ({"string": b.text, "style": args.style, "const": args.const, "count": cfg.count, "seed": cfg.seed},
            [{"point": r} for r in rows], [{"index": i} for i in bad], ["(" + ", ".join(r) + ")" for r in rows])


def cmd_check(args):
    try:
        battery = batteries.resolve(args.theorem)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    cfg = SampleConfig(count=args.count, height=args.height, seed=_seed(args))
    consts = _rationals(args.const) if args.const else None
    try:
        rep = batteries.verify_theorem_battery(battery.id, args.n, cfg, consts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    params = {"theorem": battery.id, "n": args.n, "count": cfg.count, "height": cfg.height, "seed": cfg.seed}
    if consts:
        params["const"] = [_s(c) for c in consts]
    lines = [f"{e['string']}{'' if e['const'] is None else ' c=' + e['const']}: {'ok' if e['ok'] else 'FAIL'}"
             for e in rep["strings"]]
    lines.append(f"{battery.id} n={args.n}: {rep['cases']} cases, {rep['checked']} point checks, "
                 f"{rep['symbolic']} symbolic checks, {len(rep['failures'])} failures")
    return params, rep["strings"], rep["failures"], lines


def cmd_groebner(args):
    try:
        rep = certificate_check(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fails = [c for c in rep["certificates"] if c["status"] != "pass"]
    fails += [{"coprime": k} for k, v in rep["coprime"].items() if not v]
    lines = [f"basis: {', '.join(rep['basis'])}", f"leading monomials: {', '.join(rep['leading_monomials'])}"]
    lines += [f"{c['direction']} {c['certificate']}: {c['status']}" for c in rep["certificates"]]
    lines += [f"coprime {k}: {v}" for k, v in rep["coprime"].items()]
    return {"n": args.n}, [rep], fails, lines


def cmd_parametrize(args):
    tail = _rationals(args.tail)
    try:
        pt = rational_parametrization(args.n, tail)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = on_ac(pt)
    res = {"point": [_s(v) for v in pt], "on_ac": ok}
    return ({"n": args.n, "tail": [_s(v) for v in tail]}, [res], [] if ok else [res],
            ["(" + ", ".join(res["point"]) + ")", f"on AC_{args.n}: {ok}"])


def _point(text: str) -> tuple[Fraction, Fraction]:
    vals = _rationals(text)
    if len(vals) != 2:
        raise UsageError(f"expected x,y but got {text!r}")
    return vals[0], vals[1]


def _polygon_output(chain, args, params):
    rep = polygons.area_report(chain)
    if args.svg:
        polygons.emit(chain, "svg", args.svg)
    if args.json_out:
        polygons.emit(chain, "json", args.json_out)
    res = chain.to_json()
    res["common_area"] = None if rep.common is None else _s(rep.common)
    res["max_deviation"] = rep.max_deviation
    fails = [] if chain.closed and rep.equal else [{"closed": chain.closed, "equal_areas": rep.equal}]
    lines = [f"p{i} = ({_s(p.x)}, {_s(p.y)})" for i, p in enumerate(chain.vertices)]
    lines += [f"closed: {chain.closed}", "areas: " + ", ".join(_s(a) for a in rep.areas)]
    return params, [res], fails, lines


def cmd_polygon(args):
    coeffs = _rationals(args.coeffs)
    try:
        chain = polygons.synthesize(coeffs, _point(args.p0), _point(args.p1))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _polygon_output(chain, args, {"coeffs": [_s(c) for c in coeffs], "p0": args.p0, "p1": args.p1})


def cmd_star(args):
    try:
        chain = polygons.regular_star(args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _polygon_output(chain, args, {"n": args.n, "k": args.k})


def cmd_quad(args):
    vals = _rationals(",".join(args.points))
    if len(vals) != 8:
        raise UsageError(f"quad needs 8 numbers, got {len(vals)}")
    pts = [(vals[i], vals[i + 1]) for i in range(0, 8, 2)]
    rep = polygons.quad_classify(*pts)
    center = None if rep.center is None else [_s(rep.center.x), _s(rep.center.y)]
    res = {"kind": rep.kind.value, "center": center, "collinear_triples": list(rep.degenerate)}
    lines = [rep.kind.value] + ([f"center ({center[0]}, {center[1]})"] if center else [])
    return {"points": [[_s(x), _s(y)] for x, y in pts]}, [res], [], lines


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None, help="output format")
    common.add_argument("--json", action="store_true", help="shorthand for --format json")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")

    p = _Parser(prog="acvariety", description="Area-center polygons, continuants and bracket-string varieties.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    def seeded(sp, count=DEFAULT_COUNT):
        sp.add_argument("--count", type=int, default=count)
        sp.add_argument("--seed", type=lambda t: int(t, 0), default=None)
        sp.add_argument("--height", type=int, default=9, help="bound on random numerators and denominators")

    sp = add("u", cmd_u, "continuant evaluation or expansion")
    sp.add_argument("mode", choices=("eval", "poly"))
    sp.add_argument("values", nargs="*")
    sp.add_argument("--range", nargs=2, type=int, metavar=("I", "J"))
    sp.add_argument("--nvars", type=int)

    sp = add("identities", cmd_identities, "symbolic continuant identity suite")
    sp.add_argument("--nmax", type=int, default=10)

    for name, fn, h in (("parse", cmd_parse, "validate and classify a bracket string"),
                        ("content", cmd_content, "content map of a bracket string"),
                        ("rank", cmd_rank, "rank of every left bracket")):
        add(name, fn, h).add_argument("string")

    sp = add("enumerate", cmd_enumerate, "list every balanced string of a kind")
    sp.add_argument("--kind", required=True, choices=("Par", "Ang", "Bra", "Tbra", "Qbra"))
    sp.add_argument("--n", type=int, required=True)

    sp = add("transform", cmd_transform, "apply a string rewrite")
    sp.add_argument("--kind", required=True, choices=tuple(transforms.TRANSFORMS))
    sp.add_argument("string")

    for name, fn, h in (("polyset", cmd_polyset, "polynomial set of a string"),
                        ("sample", cmd_sample, "exact random points on a string's zero set")):
        sp = add(name, fn, h)
        sp.add_argument("string")
        sp.add_argument("--style", choices=tuple(STYLES), default=None)
        sp.add_argument("--const", default=None)
        if name == "sample":
            seeded(sp, count=5)

    sp = add("check", cmd_check, "run an inclusion battery over a whole string family")
    sp.add_argument("--theorem", required=True,
                    help="battery id or numeric alias: " + ", ".join(sorted(batteries.BATTERIES)))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--const", default=None, help="comma-separated constants overriding the defaults")
    seeded(sp)

    sp = add("groebner", cmd_groebner, "cofactor certificates for the triangular basis")
    sp.add_argument("--n", type=int, required=True)

    sp = add("parametrize", cmd_parametrize, "complete x4..xn to a point of AC_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tail", required=True)

    sp = add("polygon", cmd_polygon, "polygon from coefficients and two starting vertices")
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--p0", default="1,0")
    sp.add_argument("--p1", default="0,1")
    sp.add_argument("--svg")
    sp.add_argument("--json-out")

    sp = add("star", cmd_star, "regular star polygon {n/k}")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--svg")
    sp.add_argument("--json-out")

    sp = add("quad", cmd_quad, "area-center test for a quadrilateral")
    sp.add_argument("--points", nargs="+", required=True, help="x0,y0,x1,y1,x2,y2,x3,y3")
    return p


def _jsonable(o: Any):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        fmt = "json" if args.json else (args.format or "text")
        params, results, failures, lines = args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BracketError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    except (DenominatorZero, SamplingError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        sys.stderr.write(f"{code}: {exc}\n")
        return 2 if isinstance(exc, DenominatorZero) else 1
    if fmt == "json":
        doc = {"command": args.command, "params": params, "results": results, "failures": failures}
        text = json.dumps(doc, indent=2, default=_jsonable) + "\n"
    else:
        text = "\n".join(lines) + "\n"
        if failures:
            text += f"{len(failures)} failure(s)\n"
    _write(text, args.output)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
