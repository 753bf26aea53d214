"""Command line front end.

    spinsum validate DIAGRAM
    spinsum compute DIAGRAM --cocycle zn:2 [--terms]
    spinsum cocycle-check --cocycle table:my.cocycle
    spinsum colorings DIAGRAM --cocycle trivial:S3
    spinsum moves list
    spinsum moves apply DIAGRAM --move R2 [--site N] [--direction forward]
    spinsum fuzz DIAGRAM --cocycle zn:2 --steps 100 --seed 1

DIAGRAM is a path or the name of a bundled file such as lens_p2_s1.  Every
command takes --json.  Exit codes: 0 success, 1 validation failure (bad
diagram, bad cocycle, failed fuzz), 2 usage error.
"""
import argparse
import json
import os
import sys

from .algebra import (AlgebraError, check_super3cocycle, group_by_name, load_cocycle_table,
                      trivial_cocycle, zn_example_cocycle)
from .diagram import DiagramError, load_diagram, format_morse, validate
from .lens import DATA
from .moves import REGISTRY, MoveError, apply_move, find_sites, fuzz_invariance
from .statesum import PAIRINGS, StateSumError, enumerate_admissible, invariant_Z


class UsageError(Exception):
    pass


class Failure(Exception):
    """A validation failure: reported with exit code 1."""

    def __init__(self, stage, message, condition=None, extra=None):
        super().__init__(message)
        self.stage = stage
        self.condition = condition
        self.extra = extra or {}

    def to_json(self):
        d = {"status": "error", "stage": self.stage, "message": str(self)}
        if self.condition:
            d["condition"] = self.condition
        d.update(self.extra)
        return d


# ------------------------------------------------------------------ inputs

def resolve_diagram_path(path):
    if os.path.exists(path):
        return path
    for cand in (path, path + ".morse"):
        p = os.path.join(DATA, cand)
        if os.path.exists(p):
            return p
    raise UsageError("no such diagram file: %s" % path)


def read_diagram(path):
    path = resolve_diagram_path(path)
    try:
        return load_diagram(path)
    except DiagramError as e:
        raise Failure("parse", str(e), extra={"line": e.line, "column": e.column})
    except OSError as e:
        raise UsageError(str(e))


def cocycle_from_spec(spec):
    """trivial:<group>, zn:<n> or table:<path>; table cocycles are checked
    before use."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "trivial":
            return trivial_cocycle(group_by_name(arg or "Z1"))
        if kind == "zn":
            if not arg.isdigit() or int(arg) < 1:
                raise UsageError("zn needs a positive order, got %r" % arg)
            return zn_example_cocycle(int(arg))
        if kind == "table":
            if not os.path.exists(arg) and os.path.exists(os.path.join(DATA, arg)):
                arg = os.path.join(DATA, arg)
            c = load_cocycle_table(arg)
            rep = check_super3cocycle(c, limit=5)
            if not rep.ok:
                raise Failure("cocycle", "table is not a super 3-cocycle",
                              extra={"violations": [list(v) for v in rep.violations],
                                     "omega_violations": [list(v) for v in rep.two_cocycle_violations[:5]]})
            return c
    except OSError as e:
        raise UsageError(str(e))
    except AlgebraError as e:
        if kind == "table":
            raise Failure("cocycle", str(e))
        raise UsageError(str(e))
    raise UsageError("cocycle must be trivial:<group>, zn:<n> or table:<path>, got %r" % spec)


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    d = read_diagram(args.diagram)
    rep = validate(d)
    g = rep.graph
    edges = []
    for i, e in enumerate(g.edges):
        w = rep.winding[i] if rep.winding is not None else None
        edges.append({"edge": i, "tail": "%d.%s" % (e.tail, e.tail_port),
                      "head": "%d.%s" % (e.head, e.head_port),
                      "winding": w, "weight": None if w is None else w % 2})
    out = {"name": d.name, "ok": rep.ok,
           "conditions": {c: rep.results[c] for c in rep.CONDITIONS if c in rep.results},
           "messages": rep.messages, "edges": edges}
    if rep.triangulation is not None:
        T = rep.triangulation
        out["triangulation"] = {"tetrahedra": len(T.signs), "faces": len(T.face_classes),
                                "edges": len(T.edge_classes), "vertices": T.vertex_classes}
    if args.json:
        emit(out)
    else:
        print("diagram: %s" % (d.name or args.diagram))
        for c in rep.CONDITIONS:
            if c in rep.results:
                msg = rep.messages.get(c, "")
                print("  %-12s %s%s" % (c, "pass" if rep.results[c] else "FAIL", "  " + msg if msg else ""))
        if "triangulation" in out:
            print("  triangulation: %(tetrahedra)d tetrahedra, %(faces)d faces, %(edges)d edges, "
                  "%(vertices)d ideal vertices" % out["triangulation"])
        print("  edge  tail    head    winding  weight")
        for e in edges:
            print("  %4d  %-6s  %-6s  %7s  %6s" % (e["edge"], e["tail"], e["head"],
                                                  e["winding"], e["weight"]))
    return 0 if rep.ok else 1


def _compute(d, c, args):
    try:
        return invariant_Z(d, c, terms=getattr(args, "terms", False), pairing=args.pairing)
    except StateSumError as e:
        raise Failure("validate", str(e), condition=e.condition)


def cmd_compute(args):
    d = read_diagram(args.diagram)
    c = cocycle_from_spec(args.cocycle)
    r = _compute(d, c, args)
    if args.json:
        emit(r.to_json())
    else:
        z = r.float_value
        print("Z(%s; %s) = %s" % (d.name or args.diagram, c.name, format_value(r.value)))
        print("  float: %.12g %+.12gi" % (z.real, z.imag))
        print("  admissible colorings: %d" % r.coloring_count)
        if r.terms is not None:
            for col, th, w in r.terms:
                print("  %s  theta=%+d  W=%s" % (list(col), int(th.to_float().real), format_value(w)))
    return 0


def cmd_cocycle_check(args):
    c = cocycle_from_spec(args.cocycle)
    rep = check_super3cocycle(c, limit=10)
    out = {"cocycle": c.name, "group": c.group.name, "order": c.group.order, "ok": rep.ok,
           "checked": rep.checked, "violations": [list(v) for v in rep.violations],
           "omega_violations": [list(v) for v in rep.two_cocycle_violations[:10]]}
    if args.json:
        emit(out)
    else:
        print("%s on %s: %s (%d 4-tuples checked)" % (c.name, c.group.name,
                                                    "ok" if rep.ok else "FAIL", rep.checked))
        for v in rep.violations:
            print("  violated at (g,h,k,l) = %s" % (v,))
    return 0 if rep.ok else 1


def cmd_colorings(args):
    d = read_diagram(args.diagram)
    c = cocycle_from_spec(args.cocycle)
    rep = validate(d)
    if not rep.ok:
        cond = rep.failed()[0]
        raise Failure("validate", rep.messages.get(cond, "failed"), condition=cond)
    cols = [list(x) for x in enumerate_admissible(rep.triangulation, c.group)]
    if args.json:
        emit({"group": c.group.name, "edge_classes": len(rep.triangulation.edge_classes),
              "count": len(cols), "colorings": cols})
    else:
        names = c.group.element_names
        print("%d admissible colorings of %d edge classes by %s" % (
            len(cols), len(rep.triangulation.edge_classes), c.group.name))
        for col in cols:
            print("  " + " ".join(names[x] for x in col))
    return 0


def cmd_moves_list(args):
    rows = REGISTRY.listing()
    if args.json:
        emit(rows)
    else:
        for r in rows:
            print("%-10s %-8s %3d rules  %s" % (r["move"], "enabled" if r["enabled"] else "disabled",
                                               r["rules"], r["description"]))
    return 0


def cmd_moves_apply(args):
    d = read_diagram(args.diagram)
    fam = REGISTRY.families.get(args.move)
    if fam is None and args.move not in REGISTRY.rules:
        raise UsageError("unknown move %r (see 'moves list')" % args.move)
    try:
        sites = find_sites(d, args.move, args.direction)
    except MoveError as e:
        raise UsageError(str(e))
    if args.site is None:
        out = [{"site": i, "move": s.move, "index": s.index, "pos": s.pos, "direction": s.direction}
               for i, s in enumerate(sites)]
        if args.json:
            emit(out)
        else:
            for s in out:
                print("%3d  %-22s event %d  strand %d  %s" % (s["site"], s["move"], s["index"],
                                                              s["pos"], s["direction"]))
        return 0
    if not 0 <= args.site < len(sites):
        raise UsageError("site %d out of range (%d sites)" % (args.site, len(sites)))
    new = apply_move(d, sites[args.site])
    text = format_morse(new)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    if args.json:
        emit({"move": sites[args.site].move, "events": len(new.events), "diagram": text})
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_fuzz(args):
    d = read_diagram(args.diagram)
    c = cocycle_from_spec(args.cocycle)
    _compute(d, c, args)
    fams = args.families.split(",") if args.families else None
    if fams:
        unknown = [f for f in fams if f not in REGISTRY.families]
        if unknown:
            raise UsageError("unknown move families: %s" % ", ".join(unknown))
    rep = fuzz_invariance(d, c, steps=args.steps, seed=args.seed, families=fams,
                          pairing=args.pairing)
    if args.json:
        emit(rep.to_json())
    else:
        print("fuzz %s with %s: %s after %d moves (seed %d)" % (
            d.name or args.diagram, c.name, rep.status, len(rep.history), args.seed))
        counts = rep.counts()
        if counts:
            print("  moves: " + ", ".join("%s %d" % kv for kv in sorted(counts.items())))
        if rep.failure:
            print("  first failure: %(move)s at event %(index)d, strand %(pos)d (%(direction)s): "
                  "%(reason)s" % rep.failure)
    return 0 if rep.ok else 1


# ----------------------------------------------------------------- helpers

def emit(obj):
    print(json.dumps(obj, sort_keys=True))


def format_value(v):
    if not v.exact:
        return "%.12g%+.12gi" % (v.value.real, v.value.imag)
    terms = []
    for i, c in enumerate(v.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("z" if i == 1 else "z^%d" % i)
        if not mono:
            terms.append("%d" % c)
        elif c in (1, -1):
            terms.append(("-" if c < 0 else "") + mono)
        else:
            terms.append("%d%s" % (c, mono))
    s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    if "z" in s:
        s += "  (z = exp(2 pi i/%d))" % v.N
    return s


def build_parser():
    p = argparse.ArgumentParser(prog="spinsum", description="State sums of spin 3-manifolds "
                                "from planar spin normal o-graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    coc = argparse.ArgumentParser(add_help=False)
    coc.add_argument("--cocycle", default="zn:2",
                     help="trivial:<group>, zn:<n> or table:<path> (default zn:2)")
    coc.add_argument("--debug-pairing", dest="pairing", choices=sorted(PAIRINGS), default="first",
                     help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a diagram")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compute", parents=[common, coc], help="compute the state sum")
    s.add_argument("diagram")
    s.add_argument("--terms", action="store_true", help="per-coloring breakdown")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("cocycle-check", parents=[common, coc], help="check the super cocycle equation")
    s.set_defaults(func=cmd_cocycle_check)

    s = sub.add_parser("colorings", parents=[common, coc], help="list admissible colorings")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_colorings)

    s = sub.add_parser("moves", help="move registry and rewriting")
    msub = s.add_subparsers(dest="moves_command", required=True)
    m = msub.add_parser("list", parents=[common], help="list move families")
    m.set_defaults(func=cmd_moves_list)
    m = msub.add_parser("apply", parents=[common], help="list the sites of a move, or apply one")
    m.add_argument("diagram")
    m.add_argument("--move", required=True, help="family or rule name")
    m.add_argument("--site", type=int, help="index into the site list")
    m.add_argument("--direction", choices=["forward", "backward", "both"], default="both")
    m.add_argument("--output", help="write the rewritten diagram here")
    m.set_defaults(func=cmd_moves_apply)

    s = sub.add_parser("fuzz", parents=[common, coc], help="random moves, checking Z is unchanged")
    s.add_argument("diagram")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--families", help="comma separated move families (default: all enabled)")
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None):
    p = build_parser()
    args = p.parse_args(argv)
    if getattr(args, "steps", 0) is not None and getattr(args, "steps", 0) < 0:
        p.error("--steps must be >= 0")
    try:
        return args.func(args)
    except UsageError as e:
        print("spinsum: error: %s" % e, file=sys.stderr)
        return 2
    except Failure as e:
        if getattr(args, "json", False):
            emit(e.to_json())
        else:
            print("spinsum: %s failure: %s" % (e.stage, e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
