"""Planar normal o-graphs written as Morse event words.

A diagram is read bottom to top.  A tape holds the directed strands that
cross the current height; events act on adjacent tape positions:

    cup <pos> <ccw|cw>   create two strands at pos, pos+1.  ccw gives
                         (down, up), cw gives (up, down).
    cap <pos> <ccw|cw>   join the strands at pos, pos+1.  ccw needs
                         (down, up), cw needs (up, down).
    vertex <pos> <+|->   true vertex on two upward strands; outputs two
                         upward strands (NW, NE).
    cross <pos>          fake crossing, swaps the two strands.

The sense is the turning direction of the tangent along the strand
orientation, so a counterclockwise circle is ``cup 0 ccw`` then
``cap 0 ccw``.  Each extremum adds +1/2 (ccw) or -1/2 (cw) to the winding
number of the edge that runs through it.

>>> d = parse_morse("cup 0 ccw\\ncap 0 ccw")
>>> len(d.events), extract_ograph(d).free_loop_windings
(2, [1])
"""
import re
from collections import namedtuple
from fractions import Fraction

from .triangulation import FACE_VERTS, IN_PORTS, OUT_PORTS, PORT_FACE

UP, DOWN = 1, -1
KINDS = ("cup", "cap", "vertex", "cross")
Event = namedtuple("Event", "kind pos arg")


class DiagramError(ValueError):
    """Structural problem in a diagram.  `line` and `column` locate the
    offending text when the diagram came from a file."""

    def __init__(self, message, event=None, line=None, column=None):
        loc = ""
        if line is not None:
            loc = "line %d, column %d: " % (line, column or 1)
        elif event is not None:
            loc = "event %d: " % event
        super().__init__(loc + message)
        self.event = event
        self.line = line
        self.column = column
        self.reason = message


class ParseError(DiagramError):
    pass


class MalformedCircuitError(ValueError):
    pass


class MorseDiagram:
    """A validated Morse event word.

    `events` is a tuple of Event(kind, pos, arg) with arg 'ccw'/'cw' for
    extrema, +1/-1 for vertices and None for crossings.  `expectations`
    holds (edge id, weight) pairs from ``expect_weight`` lines.
    """

    def __init__(self, events, name="", expectations=()):
        self.events = tuple(Event(*e) for e in events)
        self.name = name
        self.expectations = tuple(expectations)
        self._links = None
        self._trace()

    def _trace(self):
        tape = []
        link = {}
        for k, ev in enumerate(self.events):
            kind, pos, arg = ev
            if kind not in KINDS:
                raise DiagramError("unknown event %r" % (kind,), k)
            if not isinstance(pos, int) or pos < 0:
                raise DiagramError("bad position %r" % (pos,), k)
            if kind == "cup":
                if arg not in ("ccw", "cw"):
                    raise DiagramError("cup sense must be ccw or cw", k)
                if pos > len(tape):
                    raise DiagramError("position %d out of range for tape width %d" % (pos, len(tape)), k)
                d = (DOWN, UP) if arg == "ccw" else (UP, DOWN)
                tape[pos:pos] = [((k, 0), d[0]), ((k, 1), d[1])]
                continue
            if pos + 1 >= len(tape):
                raise DiagramError("position %d out of range for tape width %d" % (pos, len(tape)), k)
            (a, da), (b, db) = tape[pos], tape[pos + 1]
            if kind == "cap":
                if arg not in ("ccw", "cw"):
                    raise DiagramError("cap sense must be ccw or cw", k)
                want = (DOWN, UP) if arg == "ccw" else (UP, DOWN)
                if (da, db) != want:
                    raise DiagramError("cap %s needs strands %s but found %s" % (
                        arg, _dirs(want), _dirs((da, db))), k)
                link[a] = (k, 0)
                link[b] = (k, 1)
                del tape[pos:pos + 2]
            elif kind == "vertex":
                if arg not in (1, -1):
                    raise DiagramError("vertex sign must be + or -", k)
                if (da, db) != (UP, UP):
                    raise DiagramError("true vertex needs two upward strands, found %s" % _dirs((da, db)), k)
                link[a] = (k, "SW")
                link[b] = (k, "SE")
                tape[pos:pos + 2] = [((k, "NW"), UP), ((k, "NE"), UP)]
            else:
                if arg is not None:
                    raise DiagramError("cross takes no argument", k)
                link[a] = (k, 0)
                link[b] = (k, 1)
                tape[pos:pos + 2] = [((k, 2), db), ((k, 3), da)]
        if tape:
            raise DiagramError("%d dangling strand(s) at the top of the word" % len(tape))
        both = dict(link)
        both.update({v: u for u, v in link.items()})
        self._links = both

    def __eq__(self, other):
        return isinstance(other, MorseDiagram) and self.events == other.events and \
            self.name == other.name and self.expectations == other.expectations

    def __hash__(self):
        return hash(self.events)

    def __len__(self):
        return len(self.events)

    def __repr__(self):
        nv = sum(1 for e in self.events if e.kind == "vertex")
        return "MorseDiagram(%r, %d events, %d vertices)" % (self.name, len(self.events), nv)

    def replace(self, events=None, name=None, expectations=None):
        return MorseDiagram(self.events if events is None else events,
                            self.name if name is None else name,
                            self.expectations if expectations is None else expectations)

    def tape_widths(self):
        """Tape width just below each event, plus the final width."""
        w = [0]
        for kind, pos, arg in self.events:
            w.append(w[-1] + {"cup": 2, "cap": -2}.get(kind, 0))
        return w

    def tape_directions(self):
        """Direction lists (UP/DOWN) just below each event, plus the final one."""
        tape = []
        out = [list(tape)]
        for kind, pos, arg in self.events:
            if kind == "cup":
                tape[pos:pos] = [DOWN, UP] if arg == "ccw" else [UP, DOWN]
            elif kind == "cap":
                del tape[pos:pos + 2]
            elif kind == "cross":
                tape[pos], tape[pos + 1] = tape[pos + 1], tape[pos]
            out.append(list(tape))
        return out


def _dirs(ds):
    return "(%s)" % ", ".join("up" if d == UP else "down" for d in ds)


_LINE = re.compile(r"\S+")


def parse_morse(text, name=None):
    """Parse the line based event format.

    >>> d = parse_morse('''
    ... name loop
    ... cup 0 ccw   # a circle
    ... cap 0 ccw
    ... ''')
    >>> d.name, d.events[0]
    ('loop', Event(kind='cup', pos=0, arg='ccw'))
    """
    events, lines, expect = [], [], []
    dname = name or ""
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _LINE.finditer(body)]
        if not toks:
            continue
        kw, col = toks[0]
        args = toks[1:]

        def need(n):
            if len(args) != n:
                raise ParseError("%s expects %d argument(s), got %d" % (kw, n, len(args)), line=ln, column=col)

        def integer(tok):
            if not re.fullmatch(r"\d+", tok[0]):
                raise ParseError("expected a non-negative integer, got %r" % tok[0], line=ln, column=tok[1])
            return int(tok[0])

        if kw == "name":
            if not args:
                raise ParseError("name expects a value", line=ln, column=col)
            dname = body[args[0][1] - 1:].strip()
        elif kw in ("cup", "cap"):
            need(2)
            if args[1][0] not in ("ccw", "cw"):
                raise ParseError("sense must be ccw or cw, got %r" % args[1][0], line=ln, column=args[1][1])
            events.append(Event(kw, integer(args[0]), args[1][0]))
            lines.append((ln, col))
        elif kw == "vertex":
            need(2)
            if args[1][0] not in ("+", "-"):
                raise ParseError("vertex sign must be + or -, got %r" % args[1][0], line=ln, column=args[1][1])
            events.append(Event(kw, integer(args[0]), 1 if args[1][0] == "+" else -1))
            lines.append((ln, col))
        elif kw == "cross":
            need(1)
            events.append(Event(kw, integer(args[0]), None))
            lines.append((ln, col))
        elif kw == "expect_weight":
            need(2)
            w = integer(args[1])
            if w not in (0, 1):
                raise ParseError("weight must be 0 or 1", line=ln, column=args[1][1])
            expect.append((integer(args[0]), w))
        else:
            raise ParseError("unknown event keyword %r" % kw, line=ln, column=col)
    try:
        return MorseDiagram(events, dname, expect)
    except DiagramError as e:
        if isinstance(e, ParseError):
            raise
        if e.event is not None:
            ln, col = lines[e.event]
            raise ParseError(e.reason, e.event, ln, col) from None
        last = len(text.splitlines())
        raise ParseError(e.reason, None, last, 1) from None


def format_morse(d):
    """Inverse of parse_morse."""
    out = []
    if d.name:
        out.append("name %s" % d.name)
    for kind, pos, arg in d.events:
        if kind == "vertex":
            out.append("vertex %d %s" % (pos, "+" if arg > 0 else "-"))
        elif kind == "cross":
            out.append("cross %d" % pos)
        else:
            out.append("%s %d %s" % (kind, pos, arg))
    for e, w in d.expectations:
        out.append("expect_weight %d %d" % (e, w))
    return "\n".join(out) + "\n"


def load_diagram(path):
    with open(path, encoding="utf-8") as f:
        return parse_morse(f.read())


# ------------------------------------------------------------------ o-graphs

class Edge:
    """An o-graph edge: the strand from an out port of `tail` to an in port
    of `head`.  `extrema` lists (event, sense) with sense +1 for a
    counterclockwise turn; `passages` lists fake crossing events in order."""

    __slots__ = ("tail", "tail_port", "head", "head_port", "extrema", "passages")

    def __init__(self, tail, tail_port, head, head_port, extrema, passages):
        self.tail = tail
        self.tail_port = tail_port
        self.head = head
        self.head_port = head_port
        self.extrema = extrema
        self.passages = passages

    @property
    def winding(self):
        return sum(Fraction(s, 2) for _, s in self.extrema)

    def key(self):
        return (self.tail, self.tail_port, self.head, self.head_port)

    def __repr__(self):
        return "Edge(%d.%s -> %d.%s)" % self.key()


class OGraph:
    """The o-graph carried by a diagram.

    vertices        list of vertex signs, in event order
    vertex_events   event index of each vertex
    edges           list of Edge, numbered in first traversal order (vertices
                    in event order, NW before NE)
    fake_crossings  list of (event, edge_a, edge_b); a curl gives edge_a ==
                    edge_b
    free_loop_windings  windings of closed strands without vertices
    """

    def __init__(self, vertices, vertex_events, edges, fake_crossings, free_loop_windings, free_loop_crossings=0):
        self.vertices = vertices
        self.vertex_events = vertex_events
        self.edges = edges
        self.fake_crossings = fake_crossings
        self.free_loop_windings = free_loop_windings
        self.free_loop_crossings = free_loop_crossings
        self._out = {(e.tail, e.tail_port): i for i, e in enumerate(edges)}
        self._in = {(e.head, e.head_port): i for i, e in enumerate(edges)}

    def out_edge(self, v, port):
        return self._out[(v, port)]

    def in_edge(self, v, port):
        return self._in[(v, port)]

    def edge_at(self, v, port):
        return self._out[(v, port)] if port in OUT_PORTS else self._in[(v, port)]

    def is_connected(self):
        if not self.vertices:
            return False
        seen = {0}
        stack = [0]
        adj = {}
        for e in self.edges:
            adj.setdefault(e.tail, []).append(e.head)
            adj.setdefault(e.head, []).append(e.tail)
        while stack:
            v = stack.pop()
            for u in adj.get(v, ()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices) and not self.free_loop_windings

    def __repr__(self):
        return "OGraph(%d vertices, %d edges, %d fake crossings)" % (
            len(self.vertices), len(self.edges), len(self.fake_crossings))


def _step(d, node):
    """Follow a strand forward from the far end of `node`; returns the next
    node reached and the extremum sense (+1, -1 or 0) picked up."""
    k, slot = d._links[node]
    kind = d.events[k].kind
    if kind == "cup":
        return (k, 1 - slot), (1 if slot == 0 else -1), k
    if kind == "cap":
        return (k, 1 - slot), (1 if slot == 1 else -1), k
    if kind == "cross":
        return (k, {0: 3, 1: 2, 2: 1, 3: 0}[slot]), 0, k
    return (k, slot), 0, k


def extract_ograph(d):
    """Trace the strands of a diagram into an o-graph."""
    vev = [k for k, e in enumerate(d.events) if e.kind == "vertex"]
    vid = {k: i for i, k in enumerate(vev)}
    edges = []
    passages = {}
    used = set()
    for k in vev:
        for port in OUT_PORTS:
            node = (k, port)
            ext, pas = [], []
            while True:
                nxt = d._links[node]
                ek, slot = nxt
                kind = d.events[ek].kind
                if kind == "vertex":
                    edges.append(Edge(vid[k], port, vid[ek], slot, ext, pas))
                    break
                node, s, _ = _step(d, node)
                used.add(ek)
                if s:
                    ext.append((ek, s))
                if kind == "cross":
                    pas.append(ek)
                    passages.setdefault(ek, []).append(len(edges))
    free = []
    free_cross = 0
    for k, e in enumerate(d.events):
        if e.kind == "cup" and k not in used:
            node = (k, 1) if e.arg == "ccw" else (k, 0)
            w = Fraction(1, 2) if e.arg == "ccw" else Fraction(-1, 2)
            used.add(k)
            while True:
                node, s, ek = _step(d, node)
                if ek == k:
                    break
                used.add(ek)
                w += Fraction(s, 2)
                if d.events[ek].kind == "cross":
                    free_cross += 1
            free.append(int(w) if w.denominator == 1 else w)
    crossings = [(k, ps[0], ps[1]) for k, ps in sorted(passages.items()) if len(ps) == 2]
    return OGraph([d.events[k].arg for k in vev], vev, edges, crossings, free, free_cross)


def winding_numbers(d, g=None):
    """Integer winding number of every edge.

    >>> d = parse_morse("cup 0 cw\\nvertex 0 +\\ncap 0 cw")
    Traceback (most recent call last):
    ...
    spinsum.diagram.ParseError: line 2, column 1: true vertex needs two upward strands, found (up, down)
    """
    g = g or extract_ograph(d)
    out = []
    for e in g.edges:
        w = e.winding
        if w.denominator != 1:
            raise DiagramError("edge %r has non-integral winding %s" % (e, w))
        out.append(int(w))
    return out


def weights(d, g=None):
    """Z_2 weights: winding numbers mod 2."""
    return [w % 2 for w in winding_numbers(d, g)]


def through_circuits(g):
    """Circuits obtained by joining SW to NE and SE to NW at every vertex,
    as lists of edge ids."""
    nxt = {}
    thr = {"SW": "NE", "SE": "NW"}
    for i, e in enumerate(g.edges):
        nxt[i] = g.out_edge(e.head, thr[e.head_port])
    seen = set()
    out = []
    for i in range(len(g.edges)):
        if i in seen:
            continue
        c = []
        j = i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = nxt[j]
        out.append(c)
    return out


def check_C1(g):
    """True iff the through-strand closure is a single circuit covering all
    edges of a connected o-graph."""
    return bool(g.vertices) and g.is_connected() and len(through_circuits(g)) == 1


# ------------------------------------------------------------ circuits, dots

# Slots of the three arcs carried along an edge: the sides ab, bc, ac of
# the glued face [abc].
SLOT_PAIRS = ((0, 1), (1, 2), (0, 2))
# Tetrahedron edges whose two arcs make a U-turn at the vertex (both bottom
# ports or both top ports); each such corner carries a solid dot.
DOTTED = {(0, 2), (1, 3)}


class Circuit:
    """A closed circuit of arcs.  `arcs` is the cyclic list of (edge, slot)
    it runs along, `edges` the loop e_1 ... e_p of o-graph edges, `corners`
    the (vertex, tet edge) corners it turns through and `m` the number of
    solid dots."""

    def __init__(self, arcs, corners):
        self.arcs = arcs
        self.edges = [a[0] for a in arcs]
        self.corners = corners
        self.m = sum(1 for _, te in corners if te in DOTTED)

    def __repr__(self):
        return "Circuit(edges=%s, m=%d)" % (self.edges, self.m)


class SpinData:
    def __init__(self, winding, circuits, weights=None):
        self.winding = list(winding)
        self.weights = list(weights) if weights is not None else [w % 2 for w in winding]
        self.circuits = circuits


def _arc_tet_edge(g, e, slot, end):
    """Tetrahedron edge (vertex, (i, j)) of arc (e, slot) at the tail or head."""
    ed = g.edges[e]
    v, port = (ed.tail, ed.tail_port) if end == "tail" else (ed.head, ed.head_port)
    a, b = SLOT_PAIRS[slot]
    fv = FACE_VERTS[PORT_FACE[g.vertices[v]][port]]
    return v, (fv[a], fv[b])


def _corner_partner(g, v, te, port):
    """The other port of vertex v whose face contains tetrahedron edge te,
    together with the slot of te in that face."""
    sign = g.vertices[v]
    for p in IN_PORTS + OUT_PORTS:
        if p == port:
            continue
        fv = FACE_VERTS[PORT_FACE[sign][p]]
        if te[0] in fv and te[1] in fv:
            pair = (fv.index(te[0]), fv.index(te[1]))
            return p, SLOT_PAIRS.index(pair)
    raise AssertionError("tetrahedron edge %r lies in one face only" % (te,))


def circuits_and_dots(g):
    """The closed circuits obtained by replacing every edge with three parallel
    arcs and joining arcs at each vertex along the tetrahedron edges.

    Each circuit corresponds to one edge of the triangulation and runs along
    the loop of o-graph edges whose faces contain it.  A corner at a U-turn
    edge (e02 or e13) carries a solid dot.  Arcs are matched by face side, not
    by position, so the twist on edges between vertices of different sign is
    accounted for automatically.
    """
    if not check_C1(g):
        raise ValueError("circuits need a closed o-graph (C1 fails)")
    seen = set()
    circuits = []
    for e0 in range(len(g.edges)):
        for s0 in range(3):
            if (e0, s0) in seen:
                continue
            arcs, corners = [], []
            e, s, forward = e0, s0, True
            while (e, s) not in seen:
                seen.add((e, s))
                arcs.append((e, s))
                ed = g.edges[e]
                end = "head" if forward else "tail"
                v, te = _arc_tet_edge(g, e, s, end)
                port = ed.head_port if forward else ed.tail_port
                corners.append((v, te))
                p, s = _corner_partner(g, v, te, port)
                e = g.edge_at(v, p)
                forward = p in OUT_PORTS
            circuits.append(Circuit(arcs, corners))
    return circuits


def spin_data(d, g=None, weights=None):
    g = g or extract_ograph(d)
    w = winding_numbers(d, g)
    return SpinData(w, circuits_and_dots(g), weights)


class SpinReport:
    def __init__(self, violations, rows):
        self.violations = violations
        self.rows = rows
        self.ok = not violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "SpinReport(ok=%s, violations=%s)" % (self.ok, self.violations)


def check_spin_condition(s):
    """Condition S: on every circuit the weights along its edge loop sum to
    m/2 + 1 mod 2, where m is its number of solid dots.  Circuits without
    dots are included (m = 0), so their weights must sum to 1.  Returns a SpinReport whose rows are
    (circuit index, weight sum, m)."""
    rows, bad = [], []
    for i, c in enumerate(s.circuits):
        if c.m % 2:
            raise MalformedCircuitError("circuit %d has an odd number (%d) of solid dots" % (i, c.m))
        x = sum(s.weights[e] for e in c.edges) % 2
        rows.append((i, x, c.m))
        if x != (c.m // 2 + 1) % 2:
            bad.append((i, x, c.m))
    return SpinReport(bad, rows)


class ValidationReport:
    """Per-condition pass/fail for a diagram."""

    CONDITIONS = ("well-formed", "N2", "C1", "C2", "C3", "S", "weights")

    def __init__(self):
        self.results = {}
        self.messages = {}
        self.graph = None
        self.triangulation = None
        self.winding = None

    def set(self, cond, ok, msg=""):
        self.results[cond] = bool(ok)
        if msg:
            self.messages[cond] = msg

    @property
    def ok(self):
        return all(self.results.values())

    def failed(self):
        return [c for c in self.CONDITIONS if self.results.get(c) is False]

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ValidationReport(%s)" % ", ".join("%s=%s" % kv for kv in self.results.items())


def validate(d):
    """Run every check on a diagram in order, stopping at the first structural
    failure that makes later checks meaningless."""
    from .triangulation import build_triangulation, check_closedness

    r = ValidationReport()
    r.set("well-formed", True)
    g = extract_ograph(d)
    r.graph = g
    if not g.vertices:
        r.set("N2", False, "no true vertices: not an o-graph")
        return r
    if g.free_loop_windings:
        r.set("N2", False, "%d closed strand(s) without true vertices" % len(g.free_loop_windings))
        return r
    # orientations are forced upward at every vertex by the tape rules
    r.set("N2", True)
    ok = check_C1(g)
    r.set("C1", ok, "" if ok else "through-strand closure is not a single circuit")
    if not ok:
        return r
    T = build_triangulation(g)
    r.triangulation = T
    c = check_closedness(T)
    r.set("C2", c.C2, "" if c.C2 else "%d ideal vertices" % c.vertex_classes)
    r.set("C3", c.C3, "" if c.C3 else "%d edge classes for %d tetrahedra" % (c.edge_classes, c.tetrahedra))
    r.winding = winding_numbers(d, g)
    s = check_spin_condition(SpinData(r.winding, circuits_and_dots(g)))
    r.set("S", s.ok, "" if s.ok else "violated on circuits %s" % [v[0] for v in s.violations])
    bad = [(e, w) for e, w in d.expectations if e >= len(g.edges) or r.winding[e] % 2 != w]
    r.set("weights", not bad, "" if not bad else "expect_weight mismatch on %s" % bad)
    return r
