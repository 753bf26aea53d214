"""Local moves on Morse words and invariance fuzzing.

A move rule rewrites a window of consecutive events acting on `width`
adjacent strands.  Positions inside a rule are relative to the leftmost
strand.  Each rule is expanded at import time into instances, one for every
assignment of strand directions for which both sides are valid words with
the same output directions.  For moves that keep the o-graph unchanged the
expansion also checks that both sides connect the same boundary points with
the same winding parity, so a bad table entry fails loudly.

>>> from spinsum.lens import lens_diagram
>>> d = lens_diagram(2, 1)
>>> site = find_sites(d, "R2")[0]
>>> d2 = apply_move(d, site)
>>> apply_move(d2, find_sites(d2, "R2", direction="backward")[0]).events == d.events
True
"""
import itertools
import random
from collections import namedtuple

from .diagram import DOWN, UP, Event, MorseDiagram, DiagramError, validate
from .statesum import invariant_Z, StateSumError

Site = namedtuple("Site", "move index pos direction instance")


class MoveError(ValueError):
    pass


def E(kind, pos, arg=None):
    return Event(kind, pos, arg)


def simulate(events, dirs):
    """Run relative events on strands with directions `dirs`.

    Returns (output directions, connections) or None if the word is invalid.
    connections maps each boundary end ('in', i) / ('out', j) of a strand
    without true vertices to (other end, doubled winding, crossings).
    """
    tape = [(("in", i), d) for i, d in enumerate(dirs)]
    link = {}
    for k, (kind, pos, arg) in enumerate(events):
        if kind == "cup":
            if pos > len(tape):
                return None
            dd = (DOWN, UP) if arg == "ccw" else (UP, DOWN)
            tape[pos:pos] = [((k, 0), dd[0]), ((k, 1), dd[1])]
            continue
        if pos + 1 >= len(tape):
            return None
        (a, da), (b, db) = tape[pos], tape[pos + 1]
        if kind == "cap":
            if (da, db) != ((DOWN, UP) if arg == "ccw" else (UP, DOWN)):
                return None
            link[a], link[b] = (k, 0), (k, 1)
            del tape[pos:pos + 2]
        elif kind == "vertex":
            if (da, db) != (UP, UP):
                return None
            link[a], link[b] = (k, "SW"), (k, "SE")
            tape[pos:pos + 2] = [((k, "NW"), UP), ((k, "NE"), UP)]
        else:
            link[a], link[b] = (k, 0), (k, 1)
            tape[pos:pos + 2] = [((k, 2), db), ((k, 3), da)]
    out_dirs = tuple(d for _, d in tape)
    for j, (a, d) in enumerate(tape):
        link[a] = ("out", j)
    both = dict(link)
    both.update({v: u for u, v in link.items()})

    conn = {}
    for start in [("in", i) for i in range(len(dirs))] + [("out", j) for j in range(len(tape))]:
        node, w, x = start, 0, 0
        ok = True
        while True:
            nxt = both[node]
            if nxt[0] in ("in", "out"):
                break
            k, slot = nxt
            kind = events[k].kind
            if kind == "vertex":
                ok = False
                break
            if kind == "cup":
                w += 1 if slot == 0 else -1
                node = (k, 1 - slot)
            elif kind == "cap":
                w += 1 if slot == 1 else -1
                node = (k, 1 - slot)
            else:
                x += 1
                node = (k, {0: 3, 1: 2, 2: 1, 3: 0}[slot])
        if ok:
            conn[start] = (nxt, w, x)
    return out_dirs, conn


class MoveRule:
    """One row of a move table.

    lhs, rhs     relative event lists
    width        number of strands below the window
    keeps_graph  True for moves that only change the drawing
    parity_only  True if windings may change by even amounts
    revalidate   True for moves that change the triangulation; a site only
                 counts if the rewritten diagram still passes validation
    """

    def __init__(self, family, name, lhs, rhs, width, keeps_graph=True, parity_only=False,
                 revalidate=False, note=""):
        self.family = family
        self.name = name
        self.lhs = tuple(lhs)
        self.rhs = tuple(rhs)
        self.width = width
        self.keeps_graph = keeps_graph
        self.parity_only = parity_only
        self.revalidate = revalidate
        self.note = note
        self.instances = self._expand()
        if not self.instances:
            raise MoveError("rule %s has no valid orientation" % name)

    def _expand(self):
        out = []
        for dirs in itertools.product((UP, DOWN), repeat=self.width):
            a = simulate(self.lhs, dirs)
            b = simulate(self.rhs, dirs)
            if a is None or b is None or a[0] != b[0]:
                continue
            if self.keeps_graph and not _same_tangle(a[1], b[1], self.parity_only):
                raise MoveError("rule %s changes the tangle for directions %s" % (self.name, dirs))
            out.append(dirs)
        return out

    def pattern(self, direction):
        return (self.lhs, self.rhs) if direction == "forward" else (self.rhs, self.lhs)

    def __repr__(self):
        return "MoveRule(%s)" % self.name


def _same_tangle(ca, cb, parity_only):
    if set(ca) != set(cb):
        return False
    for k in ca:
        (ea, wa, _), (eb, wb, _) = ca[k], cb[k]
        if ea != eb:
            return False
        if parity_only:
            if (wa - wb) % 4:
                return False
        elif wa != wb:
            return False
    return True


def local_gluing_signature(events, width):
    """Boundary data of a window made of true vertices and fake crossings.

    Returns (faces, through, vertex_classes, edge_classes): for each boundary
    strand the ideal vertex classes of its face in branching order, the
    strands passing straight through, and the numbers of vertex and edge
    classes after the internal gluings.  Two windows with equal faces and
    through strands glue into any host in the same way.

    >>> lhs, rhs = MP_TABLE[0][1], MP_TABLE[0][2]
    >>> a, b = local_gluing_signature(lhs, 3), local_gluing_signature(rhs, 3)
    >>> a[:2] == b[:2], (a[3], b[3])
    (True, (9, 10))
    """
    from .triangulation import PORT_FACE, FACE_VERTS, TET_EDGES, ParityUnionFind

    tape = [("in", i) for i in range(width)]
    link = {}
    verts = {}
    for k, (kind, pos, arg) in enumerate(events):
        if kind == "vertex":
            link[tape[pos]], link[tape[pos + 1]] = (k, "SW"), (k, "SE")
            tape[pos:pos + 2] = [(k, "NW"), (k, "NE")]
            verts[k] = arg
        elif kind == "cross":
            tape[pos], tape[pos + 1] = tape[pos + 1], tape[pos]
        else:
            raise MoveError("window may only contain vertices and crossings")
    for j, a in enumerate(tape):
        link[a] = ("out", j)
    both = dict(link)
    both.update({v: u for u, v in link.items()})
    vuf, euf = ParityUnionFind(), ParityUnionFind()
    for k in verts:
        for v in range(4):
            vuf.add((k, v))
        for e in TET_EDGES:
            euf.add((k, e))
    faces = {}
    for k, s in verts.items():
        for p in ("NW", "NE"):
            other, f = both[(k, p)], PORT_FACE[s][p]
            if other[0] == "out":
                faces[other] = (k, f)
                continue
            h, q = other
            va, vb = FACE_VERTS[f], FACE_VERTS[PORT_FACE[verts[h]][q]]
            for t in range(3):
                vuf.union((k, va[t]), (h, vb[t]))
            for i, j in ((0, 1), (1, 2), (0, 2)):
                euf.union((k, (va[i], va[j])), (h, (vb[i], vb[j])))
        for p in ("SW", "SE"):
            other = both[(k, p)]
            if other[0] == "in":
                faces[other] = (k, PORT_FACE[s][p])
    through = tuple(sorted((a, b) for a, b in both.items() if a[0] == "in" and b[0] == "out"))
    ren = {}
    sig = []
    for key in sorted(faces):
        k, f = faces[key]
        trip = []
        for v in FACE_VERTS[f]:
            trip.append(ren.setdefault(vuf.find((k, v)), len(ren)))
        sig.append((key, tuple(trip)))
    nv = len({vuf.find((k, v)) for k in verts for v in range(4)})
    ne = len({euf.find((k, e)) for k in verts for e in TET_EDGES})
    return tuple(sig), through, nv, ne


def _curl(p, s, up=True):
    from .planar import curl_events
    return curl_events(p, s, 1 if up else -1)


def _v(p, s):
    return E("vertex", p, s)


# Two tetrahedra sharing a face (left) against three around a new edge
# (right), on three upward strands.  "R" rows start from vertex 0 then
# vertex 1, "L" rows from vertex 1 then vertex 0.  Each right side is the
# unique word of three vertices and one crossing with the same boundary
# gluing data as the left side.
MP_TABLE = []
for _s1, _s2 in itertools.product((1, -1), repeat=2):
    _a = _s1 * _s2
    MP_TABLE.append(("R", (_v(0, _s1), _v(1, _s2)),
                     {(1, 1): [_v(1, -1), _v(0, 1), E("cross", 1), _v(0, 1)],
                      (1, -1): [E("cross", 1), _v(0, -1), _v(1, 1), _v(0, 1)],
                      (-1, 1): [E("cross", 1), _v(0, 1), _v(1, -1), _v(0, -1)],
                      (-1, -1): [_v(1, 1), _v(0, -1), E("cross", 1), _v(0, -1)]}[(_s1, _s2)]))
    MP_TABLE.append(("L", (_v(1, _s1), _v(0, _s2)),
                     {(1, 1): [_v(0, 1), E("cross", 1), _v(0, 1), _v(1, -1)],
                      (1, -1): [_v(0, -1), _v(1, -1), _v(0, 1), E("cross", 1)],
                      (-1, 1): [_v(0, 1), _v(1, 1), _v(0, -1), E("cross", 1)],
                      (-1, -1): [_v(0, -1), E("cross", 1), _v(0, -1), _v(1, 1)]}[(_s1, _s2)]))
MP_TABLE = [(k, tuple(l), tuple(r)) for k, l, r in MP_TABLE]


def _sname(s):
    return "+" if s > 0 else "-"


def _rules():
    R = []
    R.append(MoveRule("R2", "R2", [], [E("cross", 0), E("cross", 0)], 2))
    R.append(MoveRule("R3", "R3", [E("cross", 0), E("cross", 1), E("cross", 0)],
                      [E("cross", 1), E("cross", 0), E("cross", 1)], 3))
    for s in (1, -1):
        R.append(MoveRule("R3-vertex", "R3-vertex-left%+d" % s,
                          [E("vertex", 0, s), E("cross", 1), E("cross", 0)],
                          [E("cross", 1), E("cross", 0), E("vertex", 1, s)], 3))
        R.append(MoveRule("R3-vertex", "R3-vertex-right%+d" % s,
                          [E("vertex", 1, s), E("cross", 0), E("cross", 1)],
                          [E("cross", 0), E("cross", 1), E("vertex", 0, s)], 3))
    for a in ("ccw", "cw"):
        R.append(MoveRule("slide", "cup-slide-right-" + a, [E("cup", 1, a), E("cross", 0), E("cross", 1)],
                          [E("cup", 0, a)], 1))
        R.append(MoveRule("slide", "cup-slide-left-" + a, [E("cup", 0, a), E("cross", 1), E("cross", 0)],
                          [E("cup", 1, a)], 1))
        R.append(MoveRule("slide", "cap-slide-right-" + a, [E("cross", 0), E("cross", 1), E("cap", 0, a)],
                          [E("cap", 1, a)], 3))
        R.append(MoveRule("slide", "cap-slide-left-" + a, [E("cross", 1), E("cross", 0), E("cap", 1, a)],
                          [E("cap", 0, a)], 3))
    for a, b in itertools.product(("ccw", "cw"), repeat=2):
        for name, lhs in (("zigzag-r", [E("cup", 1, a), E("cap", 0, b)]),
                          ("zigzag-l", [E("cup", 0, a), E("cap", 1, b)])):
            try:
                R.append(MoveRule("zigzag", "%s-%s-%s" % (name, a, b), lhs, [], 1))
            except MoveError:
                pass
    for up in (True, False):
        tag = "up" if up else "down"
        for s in (1, -1):
            R.append(MoveRule("R1-framed", "R1-framed-%s%+d" % (tag, s), [],
                              _curl(0, s, up) + _curl(0, s, up), 1, parity_only=True))
        R.append(MoveRule("R1-framed", "R1-cancel-%s" % tag, [],
                          _curl(0, 1, up) + _curl(0, -1, up), 1))
    for s in (1, -1):
        R.append(MoveRule("0-2", "0-2%s" % _sname(s), [], [_v(0, s), _v(0, -s)], 2,
                          keeps_graph=False, revalidate=True))
    for kind, lhs, rhs in MP_TABLE:
        R.append(MoveRule("MP", "MP-%s%s%s" % (kind, _sname(lhs[0].arg), _sname(lhs[1].arg)),
                          lhs, rhs, 3, keeps_graph=False, revalidate=True))
    return R


RULES = _rules()


class Registry:
    """Move families with an enabled flag and a short description."""

    def __init__(self):
        self.families = {}
        self.rules = {}

    def add(self, family, description, enabled=True, rules=()):
        self.families[family] = {"description": description, "enabled": enabled}
        for r in rules:
            self.rules[r.name] = r

    def enabled_families(self, families=None):
        return [f for f, i in self.families.items() if i["enabled"] and (not families or f in families)]

    def enabled_rules(self, families=None):
        fams = set(self.enabled_families(families))
        return [r for r in self.rules.values() if r.family in fams]

    def family_rules(self, family):
        return [r for r in self.rules.values() if r.family == family or r.name == family]

    def listing(self):
        rows = []
        for f, info in self.families.items():
            rs = [r for r in self.rules.values() if r.family == f]
            rows.append({"move": f, "enabled": info["enabled"], "rules": len(rs),
                         "revalidate": any(r.revalidate for r in rs),
                         "description": info["description"]})
        return rows


REGISTRY = Registry()


def _register_basic():
    by = {}
    for r in RULES:
        by.setdefault(r.family, []).append(r)
    REGISTRY.add("R2", "create or remove two fake crossings between two strands", rules=by["R2"])
    REGISTRY.add("R3", "triple fake crossing move", rules=by["R3"])
    REGISTRY.add("R3-vertex", "pass a strand across a true vertex (in-edges <-> out-edges)",
                 rules=by["R3-vertex"])
    REGISTRY.add("slide", "slide an extremum through a strand", rules=by["slide"])
    REGISTRY.add("zigzag", "create or remove a cancelling cup-cap pair", rules=by["zigzag"])
    REGISTRY.add("R1-framed", "create or remove a pair of curls with even total winding",
                 rules=by["R1-framed"])
    REGISTRY.add("commute", "exchange the heights of two adjacent non-interacting events")
    REGISTRY.add("0-2", "create or remove a cancelling pair of opposite tetrahedra "
                 "(only where the result stays closed and spin)", rules=by["0-2"])
    REGISTRY.add("MP", "2-3 move: two tetrahedra sharing a face <-> three around an edge "
                 "(only where the result stays closed and spin)", rules=by["MP"])
    REGISTRY.add("CP", "spin 2-3 move variant with a curl; no table entry, disabled",
                 enabled=False)
    REGISTRY.add("H", "reordering of vertex heights; covered by commute and R3-vertex, disabled",
                 enabled=False)


_register_basic()


# -------------------------------------------------------------------- sites

def _match(ev, k, pat, i):
    if k + len(pat) > len(ev):
        return False
    return all(ev[k + j] == Event(p.kind, p.pos + i, p.arg) for j, p in enumerate(pat))


def _rewrite(d, r, k, i, direction):
    pat, new = r.pattern(direction)
    ev = d.events
    rep = tuple(Event(p.kind, p.pos + i, p.arg) for p in new)
    return MorseDiagram(ev[:k] + rep + ev[k + len(pat):], d.name, ())


def _site_ok(d, r, k, i, direction, dirs):
    pat, _ = r.pattern(direction)
    if k > len(d.events) or i < 0:
        return False
    below = dirs[k]
    if i + r.width > len(below) or tuple(below[i:i + r.width]) not in r.instances:
        return False
    if not _match(d.events, k, pat, i):
        return False
    if r.revalidate:
        return validate(_rewrite(d, r, k, i, direction)).ok
    return True


def _pattern_candidates(d, rules, directions):
    """(rule, k, i, direction) for every non-empty pattern whose events
    match, anchored on the first event so positions need not be scanned."""
    ev = d.events
    out = []
    for r in rules:
        for dn in directions:
            pat, _ = r.pattern(dn)
            if not pat:
                continue
            p0 = pat[0]
            for k, e in enumerate(ev):
                if e.kind == p0.kind and e.arg == p0.arg and e.pos >= p0.pos:
                    out.append((r, k, e.pos - p0.pos, dn))
    return out


def _insertion_candidates(d, rules, directions, dirs):
    ev = d.events
    out = []
    for r in rules:
        for dn in directions:
            if r.pattern(dn)[0]:
                continue
            for k in range(len(ev) + 1):
                for i in range(len(dirs[k]) - r.width + 1):
                    out.append((r, k, i, dn))
    return out


def find_sites(d, move, direction="both"):
    """All sites of a move family (or single rule name) in a diagram, in
    deterministic order: by event index, then position, then rule."""
    if move == "commute":
        return _commute_sites(d)
    rules = REGISTRY.family_rules(move)
    if not rules:
        raise MoveError("unknown move %r" % move)
    dirs = d.tape_directions()
    dns = ("forward", "backward") if direction == "both" else (direction,)
    cands = _pattern_candidates(d, rules, dns) + _insertion_candidates(d, rules, dns, dirs)
    sites = []
    for r, k, i, dn in cands:
        if _site_ok(d, r, k, i, dn, dirs):
            sites.append(Site(r.name, k, i, dn, tuple(dirs[k][i:i + r.width])))
    sites.sort(key=lambda s: (s.index, s.pos, s.move, s.direction))
    return sites


def apply_move(d, site):
    """Rewrite the diagram at a site; the input is left unchanged."""
    if site.move == "commute":
        return _apply_commute(d, site)
    r = REGISTRY.rules.get(site.move)
    if r is None:
        raise MoveError("unknown move %r" % (site.move,))
    k, i, dn = site.index, site.pos, site.direction
    dirs = d.tape_directions()
    if not _site_ok(d, r, k, i, dn, dirs):
        raise MoveError("no valid match for %s at event %d position %d" % (r.name, k, i))
    return _rewrite(d, r, k, i, dn)


def make_site(d, move, index, pos, direction="forward"):
    """The site of a rule (or any rule of a family) at a given event index
    and strand position, or None."""
    dirs = d.tape_directions()
    for r in REGISTRY.family_rules(move):
        if _site_ok(d, r, index, pos, direction, dirs):
            return Site(r.name, index, pos, direction, tuple(dirs[index][pos:pos + r.width]))
    return None


# ------------------------------------------------------------- commutation

_IN = {"cup": 0, "cap": 2, "vertex": 2, "cross": 2}
_OUT = {"cup": 2, "cap": 0, "vertex": 2, "cross": 2}


def _commuted(e1, e2, width=None):
    """The pair (e2', e1') equivalent to e1 then e2 if e2 does not touch the
    strands created by e1, else None.

    >>> _commuted(Event("cross", 0, None), Event("cross", 2, None))
    (Event(kind='cross', pos=2, arg=None), Event(kind='cross', pos=0, arg=None))
    >>> _commuted(Event("cup", 0, "ccw"), Event("cross", 1, None)) is None
    True
    """
    p1, p2 = e1.pos, e2.pos
    if p2 + _IN[e2.kind] <= p1:
        return Event(e2.kind, p2, e2.arg), Event(e1.kind, p1 + _OUT[e2.kind] - _IN[e2.kind], e1.arg)
    if p2 >= p1 + _OUT[e1.kind]:
        return Event(e2.kind, p2 - _OUT[e1.kind] + _IN[e1.kind], e2.arg), Event(e1.kind, p1, e1.arg)
    return None


def _commute_sites(d):
    out = []
    for k in range(len(d.events) - 1):
        if _commuted(d.events[k], d.events[k + 1]) is not None:
            out.append(Site("commute", k, 0, "forward", None))
    return out


def _apply_commute(d, site):
    k = site.index
    if k + 1 >= len(d.events):
        raise MoveError("no match for commute at event %d" % k)
    r = _commuted(d.events[k], d.events[k + 1])
    if r is None:
        raise MoveError("events %d and %d interact" % (k, k + 1))
    ev = list(d.events)
    ev[k], ev[k + 1] = r
    return MorseDiagram(ev, d.name, ())


# ------------------------------------------------------------------ fuzzing

class FuzzReport:
    def __init__(self, seed, steps):
        self.seed = seed
        self.steps = steps
        self.history = []
        self.values = []
        self.status = "pass"
        self.failure = None
        self.final = None

    @property
    def ok(self):
        return self.status == "pass"

    def counts(self):
        out = {}
        for h in self.history:
            f = REGISTRY.rules[h["move"]].family if h["move"] in REGISTRY.rules else h["move"]
            out[f] = out.get(f, 0) + 1
        return out

    def to_json(self):
        return {"seed": self.seed, "steps": self.steps, "history": self.history,
                "values": self.values, "status": self.status, "failure": self.failure,
                "counts": self.counts()}


def all_sites(d, families=None):
    out = []
    for f in REGISTRY.enabled_families(families):
        out.extend(find_sites(d, f))
    return out


# Short move sequences that build the left side of a rule next to a true
# vertex and then apply it.  Plain random moves almost never produce these
# windows.  Entries are (family, event offset, strand offset); offsets are
# relative to the anchor vertex event and its position.
MACROS = {
    "R3": [("R2", 0, 0), ("R2", 1, 1), ("R2", 2, 0), ("R3", 0, 0)],
    "R3-vertex": [("R2", 1, 1), ("R2", 2, 0), ("R3-vertex", 0, 0)],
    "R3-vertex-mirror": [("R2", 1, -1), ("R2", 2, 0), ("R3-vertex", 0, -1)],
    "MP": [("0-2", 1, 1), ("MP", 0, 0)],
    "MP-mirror": [("0-2", 1, -1), ("MP", 0, -1)],
}


def _macro_plan(d, name, rng):
    steps = MACROS[name]
    if name == "R3":
        k = rng.randrange(len(d.events) + 1)
        w = len(d.tape_directions()[k])
        if w < 3:
            return None
        return k, rng.randrange(w - 2), steps
    verts = [k for k, e in enumerate(d.events) if e.kind == "vertex"]
    if not verts:
        return None
    k = rng.choice(verts)
    return k, d.events[k].pos, steps


def _random_site(d, family, rng, prefer_shrink, dirs):
    if family == "commute":
        sites = _commute_sites(d)
        return rng.choice(sites) if sites else None
    rules = REGISTRY.family_rules(family)
    dns = ("backward", "forward")
    cands = [c for c in _pattern_candidates(d, rules, dns) if _site_ok(d, c[0], c[1], c[2], c[3], dirs)]
    if prefer_shrink:
        small = [c for c in cands if len(c[0].pattern(c[3])[1]) < len(c[0].pattern(c[3])[0])]
        cands = small or cands
    grow = [(r, dn) for r in rules for dn in dns if not r.pattern(dn)[0]]
    if grow and not prefer_shrink and (not cands or rng.random() < 0.5):
        for _ in range(20):
            r, dn = rng.choice(grow)
            k = rng.randrange(len(d.events) + 1)
            n = len(dirs[k]) - r.width + 1
            if n <= 0:
                continue
            i = rng.randrange(n)
            if _site_ok(d, r, k, i, dn, dirs):
                cands = [(r, k, i, dn)]
                break
    if not cands:
        return None
    r, k, i, dn = rng.choice(cands)
    return Site(r.name, k, i, dn, tuple(dirs[k][i:i + r.width]))


def fuzz_invariance(d, c, steps=50, seed=0, families=None, max_events=80, pairing="first",
                    check_validity=True, macro_rate=0.3):
    """Apply `steps` random moves, recomputing Z after each.  Stops at the
    first change of Z (or loss of validity) and reports it.

    A step picks an enabled family at random and then a random site of it;
    with probability `macro_rate` it instead starts one of the MACROS, whose
    moves count as separate steps.

    >>> from spinsum.lens import lens_diagram
    >>> from spinsum.algebra import zn_example_cocycle
    >>> fuzz_invariance(lens_diagram(2, 1), zn_example_cocycle(2), steps=10, seed=1).ok
    True
    """
    rng = random.Random(seed)
    rep = FuzzReport(seed, steps)
    z0 = invariant_Z(d, c, pairing=pairing).value
    rep.values.append(z0.to_json())
    fams = REGISTRY.enabled_families(families)
    macros = [m for m in MACROS if all(f in fams for f, _, _ in MACROS[m])]
    cur = d
    queue = []
    step = 0
    idle = 0
    while step < steps and idle < 50:
        dirs = cur.tape_directions()
        site = None
        if queue:
            fam, k, i = queue.pop(0)
            site = make_site(cur, fam, k, i)
            if site is None:
                queue = []
        elif macros and rng.random() < macro_rate and len(cur.events) <= max_events:
            plan = _macro_plan(cur, rng.choice(macros), rng)
            if plan is not None:
                k0, p0, seq = plan
                queue = [(f, k0 + dk, p0 + dp) for f, dk, dp in seq]
            continue
        else:
            fam = rng.choice(fams)
            site = _random_site(cur, fam, rng, len(cur.events) > max_events, dirs)
        if site is None:
            idle += 1
            continue
        idle = 0
        new = apply_move(cur, site)
        entry = {"step": step, "move": site.move, "index": site.index, "pos": site.pos,
                 "direction": site.direction}
        rep.history.append(entry)
        step += 1
        try:
            z = invariant_Z(new, c, check=check_validity, pairing=pairing).value
        except StateSumError as e:
            rep.status = "fail"
            rep.failure = dict(entry, reason="validity lost: %s" % e)
            return rep
        rep.values.append(z.to_json())
        if not z == z0:
            rep.status = "fail"
            rep.failure = dict(entry, reason="Z changed from %s to %s" % (z0.to_float(), z.to_float()))
            return rep
        cur = new
    rep.final = cur
    return rep


__all__ = ["find_sites", "apply_move", "make_site", "fuzz_invariance", "REGISTRY", "RULES",
           "MoveRule", "Site", "MoveError", "simulate", "local_gluing_signature", "MP_TABLE",
           "MACROS", "DiagramError", "validate"]
