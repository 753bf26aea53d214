"""Planar drawings of abstract o-graphs as Morse words.

An abstract o-graph is a list of vertex signs and a list of edges
(tail, out_port, head, in_port).  `route` lays the vertices out bottom to top
and threads every edge through fake crossings; edges that point downward in
the chosen order start as a cup at the bottom and end in a cap at the top.
"""
import random

from .diagram import Event, MorseDiagram, extract_ograph


def route(signs, edges, order=None, rng=None, senses=None, name=""):
    """Draw an abstract o-graph.

    order   vertex order from bottom to top (default 0..t-1)
    rng     if given, random insertion points for the return cups
    senses  optional {edge: 'ccw'|'cw'} for the cups of returning edges
    """
    order = list(order) if order is not None else list(range(len(signs)))
    height = {v: i for i, v in enumerate(order)}
    ev = []
    tape = []
    back = [i for i, (tv, op, hv, ip) in enumerate(edges) if height[tv] >= height[hv]]
    senses = senses or {}
    for i in back:
        pos = len(tape) if rng is None else rng.randint(0, len(tape))
        if senses.get(i, "ccw") == "ccw":
            ev.append(Event("cup", pos, "ccw"))
            tape[pos:pos] = [("down", i), ("up", i)]
        else:
            ev.append(Event("cup", pos, "cw"))
            tape[pos:pos] = [("up", i), ("down", i)]

    def move(lbl, target):
        p = tape.index(lbl)
        while p > target:
            ev.append(Event("cross", p - 1, None))
            tape[p - 1], tape[p] = tape[p], tape[p - 1]
            p -= 1
        while p < target:
            ev.append(Event("cross", p, None))
            tape[p + 1], tape[p] = tape[p], tape[p + 1]
            p += 1

    inedge = {(hv, ip): i for i, (tv, op, hv, ip) in enumerate(edges)}
    outedge = {(tv, op): i for i, (tv, op, hv, ip) in enumerate(edges)}
    for v in order:
        a, b = ("up", inedge[(v, "SW")]), ("up", inedge[(v, "SE")])
        pa = tape.index(a)
        move(b, pa + 1 if tape.index(b) > pa else pa)
        move(b, tape.index(a) + 1)
        pos = tape.index(a)
        ev.append(Event("vertex", pos, signs[v]))
        lab = [("up", e) if e not in back else ("tail", e) for e in (outedge[(v, "NW")], outedge[(v, "NE")])]
        tape[pos:pos + 2] = lab
    while tape:
        e = tape[0][1]
        a, b = ("tail", e), ("down", e)
        pa, pb = tape.index(a), tape.index(b)
        if pa < pb:
            move(b, pa + 1)
            ev.append(Event("cap", tape.index(a), "cw"))
        else:
            move(a, pb + 1)
            ev.append(Event("cap", tape.index(b), "ccw"))
        p = min(tape.index(a), tape.index(b))
        del tape[p:p + 2]
    return MorseDiagram(ev, name)


def curl_events(pos, sense=+1, direction=1):
    """Events of a single curl on the strand at `pos`.

    On an upward strand sense +1 adds winding +1 and sense -1 adds -1.  On a
    downward strand the roles of the two shapes swap.
    """
    if direction == 1:
        if sense > 0:
            return [Event("cup", pos + 1, "ccw"), Event("cross", pos, None), Event("cap", pos, "ccw")]
        return [Event("cup", pos, "cw"), Event("cross", pos + 1, None), Event("cap", pos + 1, "cw")]
    if sense > 0:
        return [Event("cup", pos, "ccw"), Event("cross", pos + 1, None), Event("cap", pos + 1, "ccw")]
    return [Event("cup", pos + 1, "cw"), Event("cross", pos, None), Event("cap", pos, "cw")]


def add_curls(d, flags, name=None):
    """Insert one counterclockwise curl on each flagged edge, right after its
    tail vertex.  Flipping a flag flips the weight of that edge."""
    g = extract_ograph(d)
    inserts = {}
    for e, f in enumerate(flags):
        if f:
            ed = g.edges[e]
            inserts.setdefault(g.vertex_events[ed.tail], []).append((ed.tail_port, f))
    out = []
    for k, x in enumerate(d.events):
        out.append(x)
        for port, f in sorted(inserts.get(k, ()), key=lambda t: t[0] == "NW"):
            p = x.pos if port == "NW" else x.pos + 1
            out += curl_events(p, 1 if f > 0 else -1)
    return MorseDiagram(out, d.name if name is None else name, d.expectations)


def random_closed_ograph(t, rng, tries=5000):
    """A random abstract o-graph with t vertices passing C1, C2 and C3, or
    None if none was found."""
    from .diagram import OGraph, Edge, check_C1
    from .triangulation import build_triangulation, check_closedness

    for _ in range(tries):
        outs = [(v, p) for v in range(t) for p in ("NW", "NE")]
        ins = [(v, p) for v in range(t) for p in ("SW", "SE")]
        rng.shuffle(ins)
        edges = [(o[0], o[1], i[0], i[1]) for o, i in zip(outs, ins)]
        signs = [rng.choice([1, -1]) for _ in range(t)]
        g = OGraph(signs, list(range(t)), [Edge(*e, [], []) for e in edges], [], [])
        if not check_C1(g):
            continue
        if check_closedness(build_triangulation(g)).ok:
            return signs, edges
    return None


def random_planar(t, rng=None):
    """Random closed diagram with t vertices and random cup placements."""
    rng = rng or random.Random()
    r = random_closed_ograph(t, rng)
    if r is None:
        return None
    signs, edges = r
    order = list(range(t))
    rng.shuffle(order)
    senses = {i: rng.choice(["ccw", "cw"]) for i in range(len(edges))}
    return route(signs, edges, order=order, rng=rng, senses=senses)
