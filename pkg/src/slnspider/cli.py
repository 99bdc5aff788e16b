"""Command line front end: parse, map, evaluate, reduce, verify, fuzz.

Diagrams travel as JSON:

    {"n": 3, "kind": "cobweb",
     "bottom": [{"label": [2, 1], "dir": "up"}],
     "layers": [{"gen": "cup", "pos": 1, "label": [2, 1], "flow": "lr"},
                {"gen": "tag", "pos": 0, "side": "left"}]}

Web strand labels are integers, cobweb labels are root pairs [i, j].
Boundary data files list one subset per boundary position, bottom word
first: {"sets": [[1, 2], [3]]}.

Exit codes: 0 success, 1 verification/reduction failure, 2 parse or
validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .cobweb import BudgetExhausted, Root, evaluate, reduce_oracle
from .diagram import (COBWEB, DiagramError, IllFormed, Layer, SlicedDiagram,
                      StrandEnd, WEB, lincomb_to_json_obj,
                      serialize as _serialize, to_json_obj)
from .scalar import LaurentScalar
from .statesum import InconsistentBoundary, map_web
from .verify import (fuzz_invariance, verify_catalog, verify_consequences,
                     verify_double_square)
from .web import delete_n_strands, has_n_strands, RELATION_FAMILIES


class ParseError(Exception):
    def __init__(self, location: str, expected: str):
        self.location = location
        self.expected = expected
        super().__init__(f"{location}: expected {expected}")


def _label_from_json(kind: str, raw: Any, where: str):
    if kind == WEB:
        if not isinstance(raw, int):
            raise ParseError(where, "an integer strand label")
        return raw
    if not (isinstance(raw, list) and len(raw) == 2
            and all(isinstance(x, int) for x in raw)):
        raise ParseError(where, "a root label [i, j]")
    return Root(raw[0], raw[1])


def parse(text: str) -> SlicedDiagram:
    """Parse diagram JSON; parse errors carry a location and expectation."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}", "valid JSON") from e
    if not isinstance(obj, dict):
        raise ParseError("$", "a JSON object")
    kind = obj.get("kind")
    if kind not in (WEB, COBWEB):
        raise ParseError("$.kind", "'web' or 'cobweb'")
    n = obj.get("n")
    if not isinstance(n, int) or n < 2:
        raise ParseError("$.n", "an integer rank >= 2")
    bottom = []
    for i, e in enumerate(obj.get("bottom", [])):
        where = f"$.bottom[{i}]"
        if not isinstance(e, dict) or e.get("dir") not in ("up", "down"):
            raise ParseError(where, "{'label': ..., 'dir': 'up'|'down'}")
        bottom.append(StrandEnd(_label_from_json(kind, e.get("label"), where),
                                e["dir"]))
    layers = []
    for i, l in enumerate(obj.get("layers", [])):
        where = f"$.layers[{i}]"
        if not isinstance(l, dict) or not isinstance(l.get("pos"), int):
            raise ParseError(where, "{'gen': ..., 'pos': int, ...}")
        g = l.get("gen")
        if g == "cup":
            if l.get("flow") not in ("lr", "rl"):
                raise ParseError(where + ".flow", "'lr' or 'rl'")
            layers.append(Layer("cup", l["pos"],
                                label=_label_from_json(kind, l.get("label"), where),
                                flow=l["flow"]))
        elif g == "tag":
            if l.get("side") not in ("left", "right"):
                raise ParseError(where + ".side", "'left' or 'right'")
            layers.append(Layer("tag", l["pos"], side=l["side"]))
        elif g == "split":
            if not isinstance(l.get("left"), int):
                raise ParseError(where + ".left", "an integer label")
            layers.append(Layer("split", l["pos"], left=l["left"]))
        elif g in ("cap", "vcross", "merge"):
            layers.append(Layer(g, l["pos"]))
        else:
            raise ParseError(where + ".gen", "a known generator name")
    try:
        return SlicedDiagram(n, kind, tuple(bottom), tuple(layers))
    except (IllFormed, DiagramError) as e:
        raise ParseError("$.layers", f"a well-formed diagram ({e})") from e


def serialize(d: SlicedDiagram) -> str:
    return _serialize(d)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _scalar_json(s: LaurentScalar) -> list:
    return [list(t) for t in s.to_triples()]


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_eval(args) -> int:
    d = parse(_read(args.diagram))
    if d.kind != COBWEB:
        print("eval expects a cobweb", file=sys.stderr)
        return 2
    value = evaluate(d)
    if args.format == "json":
        print(json.dumps({"scalar": _scalar_json(value), "text": str(value)}))
    else:
        print(value)
    return 0


def _cmd_map(args) -> int:
    d = parse(_read(args.web))
    if d.kind != WEB:
        print("map expects a web", file=sys.stderr)
        return 2
    if has_n_strands(d):
        d = delete_n_strands(d)
    data = None
    if args.data:
        obj = json.loads(_read(args.data))
        sets = obj.get("sets") if isinstance(obj, dict) else obj
        if not isinstance(sets, list):
            print("boundary data file needs {'sets': [[...], ...]}", file=sys.stderr)
            return 2
        data = tuple(frozenset(s) for s in sets)
    try:
        lc = map_web(d, data)
    except InconsistentBoundary as e:
        print(f"inconsistent boundary data: {e}", file=sys.stderr)
        return 2
    out = json.dumps({"n": d.n, "terms": lincomb_to_json_obj(lc)}, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return 0


def _cmd_reduce(args) -> int:
    d = parse(_read(args.cobweb))
    if d.kind != COBWEB:
        print("reduce expects a cobweb", file=sys.stderr)
        return 2
    try:
        res = reduce_oracle(d, budget=args.budget)
    except BudgetExhausted as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return 1
    obj = {"scalar": _scalar_json(res.factor), "scalar_text": str(res.factor),
           "applications": res.applications, "diagram": to_json_obj(res.diagram)}
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(f"scalar: {res.factor}")
        print(f"applications: {res.applications}")
        print(f"residual: {res.diagram}")
    return 0


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _cmd_verify(args) -> int:
    ns = _parse_n_range(args.n)
    if args.include_n5 and 5 not in ns:
        ns.append(5)
    names = None if args.relation == "all" else [args.relation]
    reports = []
    for n in ns:
        reports += verify_catalog(n, names=names)
        if args.consequences:
            reports += [("consequence", c) for c in verify_consequences(n)]
            if n >= 3:
                reports += verify_double_square(n)
    plain = [r for r in reports if not isinstance(r, tuple)]
    cons = [r[1] for r in reports if isinstance(r, tuple)]
    ok = all(r.verdict for r in plain) and all(c.ok for c in cons)
    if args.format == "json":
        out = {
            "reports": [{"relation": r.relation, "n": r.n, "datum": r.datum,
                         "lhs": _scalar_json(r.lhs_value),
                         "rhs": _scalar_json(r.rhs_value),
                         "pass": r.verdict} for r in plain],
            "consequences": [{"name": c.name, "detail": c.detail, "pass": c.ok}
                             for c in cons],
            "total": len(plain) + len(cons),
            "failures": sum(1 for r in plain if not r.verdict)
            + sum(1 for c in cons if not c.ok),
        }
        print(json.dumps(out, indent=2))
    else:
        for r in plain:
            print(r.line())
        for c in cons:
            print(c.line())
        fails = sum(1 for r in plain if not r.verdict) + sum(1 for c in cons if not c.ok)
        print(f"{len(plain) + len(cons)} checks, {fails} failures")
    return 0 if ok else 1


def _cmd_fuzz(args) -> int:
    report = fuzz_invariance(args.seed, args.iters, budget=args.budget)
    print(f"{report.iterations} diagrams, {report.applications_checked} relation "
          f"applications, {report.reductions_checked} oracle reductions")
    for f in report.failures:
        print("FAIL " + f)
    if report.ok:
        print("all invariance checks passed")
    return 0 if report.ok else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="slnspider",
                                 description="webs, cobwebs and the map between them")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a closed-form cobweb scalar")
    p.add_argument("diagram")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("map", help="map a web to its sum of cobwebs")
    p.add_argument("web")
    p.add_argument("--data", help="boundary data JSON file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_map)

    p = sub.add_parser("reduce", help="rewrite a cobweb to canonical form")
    p.add_argument("cobweb")
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("verify", help="check the relation catalog maps consistently")
    p.add_argument("--n", default="2..4", help="rank or range, e.g. 3 or 2..4")
    p.add_argument("--relation", default="all",
                   choices=("all",) + RELATION_FAMILIES)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--include-n5", action="store_true")
    p.add_argument("--consequences", action="store_true",
                   help="also run saddle/curl/bubble and double-square checks")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("fuzz", help="randomized invariance and oracle checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--budget", type=int, default=8000)
    p.set_defaults(fn=_cmd_fuzz)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error at {e.location}: expected {e.expected}", file=sys.stderr)
        return 2
    except (IllFormed, DiagramError, InconsistentBoundary, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
