"""Planar spin diagrams of the lens spaces L(p,1).

The o-graph is a chain of p positive vertices: a loop from NW to SW at the
first vertex, a pair of edges between each two neighbours and a loop from NE
to SE at the last vertex.  Spin structures are chosen by curls (each curl
flips the weight of one edge).  Structure 1 is the plain drawing; for even p
structure 2 adds curls on the two edges leaving every odd vertex (see
spin_curls).

>>> d = lens_diagram(3)
>>> sum(e.kind == "vertex" for e in d.events)
3
"""
import os

from .diagram import load_diagram, winding_numbers
from .planar import add_curls, route

DATA = os.path.join(os.path.dirname(__file__), "data")


def chain_ograph(p, sign=1):
    """Abstract o-graph (signs, edges) of L(p,1)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    edges = [(0, "NW", 0, "SW")]
    for i in range(p - 1):
        edges += [(i, "NE", i + 1, "SW"), (i + 1, "NW", i, "SE")]
    edges += [(p - 1, "NE", p - 1, "SE")]
    return [sign] * p, edges


def spin_curls(p, s):
    """Curl flags (one per edge of chain_ograph) for spin structure s."""
    n = 2 * p
    if s == 1:
        return [0] * n
    if s == 2 and p % 2 == 0:
        flags = [0] * n
        for j in range(1, p, 2):
            # edges (j, NW) -> (j-1, SE) and the edge leaving (j, NE)
            flags[2 * j] = flags[2 * j + 1] = 1
        return flags
    raise ValueError("L(%d,1) has no spin structure %r" % (p, s))


def build_lens_diagram(p, s=1):
    """Draw L(p,1) with spin structure s from scratch."""
    d = route(*chain_ograph(p))
    return add_curls(d, spin_curls(p, s), name="L(%d,1) s%d" % (p, s))


def lens_file(p, s=1):
    return os.path.join(DATA, "lens_p%d_s%d.morse" % (p, s))


def lens_diagram(p, s=1):
    """The bundled diagram for L(p,1) with spin structure s (falls back to
    drawing it when no file is bundled)."""
    path = lens_file(p, s)
    if os.path.exists(path):
        return load_diagram(path)
    return build_lens_diagram(p, s)


def bundled():
    """Names of all bundled diagram files."""
    return sorted(f for f in os.listdir(DATA) if f.endswith(".morse"))


def vertex_coboundaries(g):
    """For each true vertex, the 0/1 vector flipping every edge end at it.
    A loop meets its vertex twice and is left unchanged."""
    out = []
    for v in range(len(g.vertices)):
        x = [0] * len(g.edges)
        for i, e in enumerate(g.edges):
            x[i] = ((e.tail == v) + (e.head == v)) % 2
        out.append(tuple(x))
    return out


def spin_weight_classes(d):
    """Weight assignments passing condition S, grouped modulo vertex
    coboundaries.

    Every edge weight is flipped in turn with curls; returns a list of
    classes, each a sorted list of (flags, diagram) pairs.

    >>> [len(c) for c in spin_weight_classes(lens_diagram(2))]
    [2, 2]
    """
    from .diagram import SpinData, check_spin_condition, circuits_and_dots, extract_ograph
    import itertools

    d = d.replace(expectations=())
    g = extract_ograph(d)
    circ = circuits_and_dots(g)
    base = winding_numbers(d, g)
    gens = vertex_coboundaries(g)
    span = {tuple([0] * len(g.edges))}
    for x in gens:
        span |= {tuple(a ^ b for a, b in zip(s, x)) for s in span}
    classes = {}
    for flags in itertools.product((0, 1), repeat=len(g.edges)):
        w = [(b + f) % 2 for b, f in zip(base, flags)]
        if not check_spin_condition(SpinData(w, circ)).ok:
            continue
        key = min(tuple(a ^ b for a, b in zip(flags, s)) for s in span)
        classes.setdefault(key, []).append(flags)
    return [[(f, add_curls(d, f)) for f in sorted(fl)] for _, fl in sorted(classes.items())]
