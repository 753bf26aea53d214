"""Admissible colorings and the state sum Z = sum_phi theta(P;phi) W(T;phi).

>>> from spinsum.lens import lens_diagram
>>> from spinsum.algebra import zn_example_cocycle
>>> r = invariant_Z(lens_diagram(2, 1), zn_example_cocycle(2))
>>> r.float_value, r.coloring_count
((1-1j), 2)
"""
import itertools
import json

from .diagram import extract_ograph, validate
from .triangulation import build_triangulation, face_of_edge, FACE_VERTS


class StateSumError(ValueError):
    """A diagram failed validation; `condition` names the failed check."""

    def __init__(self, condition, message):
        super().__init__("%s: %s" % (condition, message))
        self.condition = condition


def enumerate_admissible(T, G):
    """Yield all admissible colorings of the edge classes of T as tuples, in
    lexicographic order.

    Classes are assigned in index order; after each choice every face with two
    known sides fixes its third side, and conflicts prune the branch.
    """
    n = len(T.edge_classes)
    rels = T.relations()
    by_class = [[] for _ in range(n)]
    for r in rels:
        for c in set(r):
            by_class[c].append(r)
    mul = G.mul
    inv = G.inverse
    col = [None] * n

    def propagate(start):
        # returns list of classes set here, or None on conflict
        stack = [start]
        setlist = []
        while stack:
            c = stack.pop()
            for x, y, z in by_class[c]:
                a, b, d = col[x], col[y], col[z]
                if a is not None and b is not None:
                    v, tgt = mul(a, b), z
                elif a is not None and d is not None:
                    v, tgt = mul(inv[a], d), y
                elif b is not None and d is not None:
                    v, tgt = mul(d, inv[b]), x
                else:
                    continue
                if col[tgt] is None:
                    col[tgt] = v
                    setlist.append(tgt)
                    stack.append(tgt)
                elif col[tgt] != v:
                    for t in setlist:
                        col[t] = None
                    return None
        return setlist

    def rec(i):
        while i < n and col[i] is not None:
            i += 1
        if i == n:
            yield tuple(col)
            return
        for g in G.elements():
            col[i] = g
            s = propagate(i)
            if s is not None:
                yield from rec(i + 1)
                for t in s:
                    col[t] = None
            col[i] = None

    yield from rec(0)


def brute_force_colorings(T, G):
    """All admissible colorings by exhaustive search (test oracle)."""
    rels = T.relations()
    for col in itertools.product(G.elements(), repeat=len(T.edge_classes)):
        if all(G.mul(col[x], col[y]) == col[z] for x, y, z in rels):
            yield col


def weight_W(T, phi, c):
    """Product over tetrahedra of alpha(phi01, phi12, phi23) ** sign."""
    out = c.one()
    for t, s in enumerate(T.signs):
        x, y, z = T.tet_colors(t)
        g, h, k = phi[x], phi[y], phi[z]
        out = out * (c.alpha(g, h, k) if s > 0 else c.alpha_inv(g, h, k))
    return out


# Pairing used for the sign of a fake crossing: which two sides of a strand's
# face feed omega.  "first" uses the first two sides in branching order; the
# other options exist only to show that a wrong choice is detected.
PAIRINGS = {
    "first": ((0, 1), (1, 2)),
    "corrupt": ((1, 2), (0, 2)),
}


def crossing_faces(g):
    """For each fake crossing, the (tet, face) glued along each strand."""
    return [(face_of_edge(g, a), face_of_edge(g, b)) for _, a, b in g.fake_crossings]


def theta_exponent(g, T, phi, c, pairing="first", faces=None):
    faces = faces if faces is not None else crossing_faces(g)
    (p1, q1), (p2, q2) = PAIRINGS[pairing]
    e = 0
    for (ta, fa), (tb, fb) in faces:
        va, vb = FACE_VERTS[fa], FACE_VERTS[fb]
        wa = c.omega(phi[T.edge(ta, va[p1], va[q1])], phi[T.edge(ta, va[p2], va[q2])])
        wb = c.omega(phi[T.edge(tb, vb[p1], vb[q1])], phi[T.edge(tb, vb[p2], vb[q2])])
        e += wa * wb
    return e % 2


def theta(g, T, phi, c, pairing="first"):
    """Product over fake crossings of (-1)^{omega(a1,a2) omega(b1,b2)} where
    (a1, a2) color the first two branching-ordered sides of the face glued
    along one strand and (b1, b2) those of the other strand."""
    return c.sign(theta_exponent(g, T, phi, c, pairing))


class StateSumResult:
    """value (Scalar), float_value (complex), coloring_count and, when
    requested, terms as (coloring, theta, W) triples."""

    def __init__(self, value, coloring_count, terms=None, name="", group="", cocycle=""):
        self.value = value
        self.float_value = value.to_float()
        self.coloring_count = coloring_count
        self.terms = terms
        self.name = name
        self.group = group
        self.cocycle = cocycle

    def to_json(self):
        d = {"name": self.name, "group": self.group, "cocycle": self.cocycle,
             "coloring_count": self.coloring_count}
        v = self.value.to_json()
        d["value_exact"] = v.get("value_exact")
        d["value_float"] = _clean(v["value_float"])
        if self.terms is not None:
            d["terms"] = [{"coloring": list(col), "theta": _clean(t.to_json()["value_float"])[0],
                           "W": w.to_json()} for col, t, w in self.terms]
        return d

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return "StateSumResult(%s, colorings=%d)" % (self.float_value, self.coloring_count)


def _clean(v):
    return [0.0 if abs(x) < 1e-12 else round(x, 12) for x in v]


def invariant_Z(d, c, terms=False, check=True, pairing="first"):
    """State sum of a diagram for a super cocycle.

    With check=True the diagram must pass every validation condition and a
    StateSumError names the first failure.
    """
    if check:
        rep = validate(d)
        if not rep.ok:
            cond = rep.failed()[0]
            raise StateSumError(cond, rep.messages.get(cond, "failed"))
        g, T = rep.graph, rep.triangulation
    else:
        g = extract_ograph(d)
        T = build_triangulation(g)
    faces = crossing_faces(g)
    total = c.zero()
    count = 0
    out = [] if terms else None
    for phi in enumerate_admissible(T, c.group):
        w = weight_W(T, phi, c)
        th = theta_exponent(g, T, phi, c, pairing, faces)
        total = total + (-w if th else w)
        count += 1
        if terms:
            out.append((phi, c.sign(th), w))
    return StateSumResult(total, count, out, d.name, c.group.name, c.name)


def lens_formula_eval(c):
    """The two closed forms for L(2,1):
    sum_{g^2=1} (-1)^{w(g,g)+w(g,1)} alpha(g,1,g) alpha(g,g,g) and
    sum_{g^2=1} alpha(g,1,g) alpha(g,g,g)."""
    G = c.group
    e = G.identity
    s1, s2 = c.zero(), c.zero()
    for g in G.elements():
        if G.mul(g, g) != e:
            continue
        t = c.alpha(g, e, g) * c.alpha(g, g, g)
        s2 = s2 + t
        s1 = s1 + c.sign(c.omega(g, g) + c.omega(g, e)) * t
    return s1, s2
