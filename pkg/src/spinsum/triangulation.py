"""Branched ideal triangulations built from normal o-graphs.

Every true vertex becomes a tetrahedron with vertices 0..3.  Face F_i is the
face opposite vertex i, listed with its vertices in increasing order.  Each
edge of the o-graph glues the face at its tail port to the face at its head
port by the map that keeps the vertex order (k-th vertex to k-th vertex).

>>> from spinsum.lens import lens_diagram
>>> from spinsum.diagram import extract_ograph
>>> T = build_triangulation(extract_ograph(lens_diagram(2, 1)))
>>> len(T.signs), len(T.face_classes), len(T.edge_classes)
(2, 4, 3)
>>> check_closedness(T).ok
True
"""
import numpy as np

FACE_VERTS = {i: tuple(v for v in range(4) if v != i) for i in range(4)}
TET_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

# Which face of the tetrahedron sits at each port of a true vertex.  Ports are
# named by compass direction with the two incoming strands at the bottom.  The
# negative table is the positive one with faces relabelled i -> 3 - i.  This is
# the one convention not forced by the rest of the construction, and the lens
# space values depend on it.
PORT_FACE = {
    +1: {"SW": 1, "SE": 3, "NW": 2, "NE": 0},
    -1: {"SW": 2, "SE": 0, "NW": 1, "NE": 3},
}
IN_PORTS = ("SW", "SE")
OUT_PORTS = ("NW", "NE")


class TriangulationError(ValueError):
    pass


class BranchingError(TriangulationError):
    pass


class ParityUnionFind:
    """Union-find that also tracks a Z_2 label relative to the root.

    Used for edge orientations: joining two edge copies with parity 1 means
    they are identified with opposite orientations.
    """

    def __init__(self):
        self.parent = {}
        self.par = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.par[x] = 0

    def find(self, x):
        self.add(x)
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        acc = 0
        for y in reversed(path):
            acc ^= self.par[y]
            self.par[y] = acc
            self.parent[y] = root
        return root

    def parity(self, x):
        self.find(x)
        return self.par[x]

    def union(self, a, b, p=0):
        """Join a and b with relative parity p; returns False on a conflict."""
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.par[a], self.par[b]
        if ra == rb:
            return (pa ^ pb) == p
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.par[rb] = pa ^ pb ^ p
        return True


class BranchedTriangulation:
    """Tetrahedra, face gluings and edge classes.

    signs[t]         sign of tetrahedron t
    gluings[f]       ((t, face), (t', face'), vertex_map) for face class f;
                     vertex_map[k] is the vertex of face' matched to the k-th
                     vertex of face (identity for order preserving gluings)
    edge_classes     list of sorted member lists of (t, (i, j)); class ids
                     are ordered by smallest member
    edge_class_of    (t, (i, j)) -> class id
    """

    def __init__(self, signs, gluings, edge_classes, vertex_classes):
        self.signs = list(signs)
        self.gluings = list(gluings)
        self.edge_classes = edge_classes
        self.edge_class_of = {m: i for i, ms in enumerate(edge_classes) for m in ms}
        self.vertex_classes = vertex_classes
        self.face_classes = list(range(len(self.gluings)))

    @property
    def n_tetrahedra(self):
        return len(self.signs)

    def edge(self, t, i, j):
        return self.edge_class_of[(t, (i, j))]

    def tet_colors(self, t):
        """Edge classes of e01, e12, e23 of tetrahedron t."""
        return self.edge(t, 0, 1), self.edge(t, 1, 2), self.edge(t, 2, 3)

    def relations(self):
        """All face relations (x, y, z) meaning phi(x) phi(y) = phi(z), one per
        face of every tetrahedron."""
        out = []
        for t in range(len(self.signs)):
            for f in range(4):
                a, b, c = FACE_VERTS[f]
                out.append((self.edge(t, a, b), self.edge(t, b, c), self.edge(t, a, c)))
        return out

    def dump(self):
        """Stable text dump for debugging and golden tests."""
        lines = ["tetrahedra %d" % len(self.signs)]
        for t, s in enumerate(self.signs):
            lines.append("tet %d %s" % (t, "+" if s > 0 else "-"))
        for f, ((t, a), (u, b), vm) in enumerate(self.gluings):
            lines.append("glue %d: tet %d face %d -> tet %d face %d" % (f, t, a, u, b))
        for i, ms in enumerate(self.edge_classes):
            lines.append("edge %d: %s" % (i, " ".join("%d:%d%d" % (t, a, b) for t, (a, b) in ms)))
        lines.append("vertices %d" % self.vertex_classes)
        return "\n".join(lines)

    def __repr__(self):
        return "BranchedTriangulation(%d tetrahedra, %d faces, %d edges)" % (
            len(self.signs), len(self.gluings), len(self.edge_classes))


def glue_tetrahedra(signs, gluings):
    """Build a triangulation from explicit face gluings.

    Each gluing is ((t, face), (t', face'), vertex_map) where vertex_map[k]
    gives the position in face' matched with position k of face.  Gluings
    that identify some edge with itself reversed raise BranchingError.
    """
    seen = set()
    for (ta, fa), (tb, fb), vm in gluings:
        for x in ((ta, fa), (tb, fb)):
            if x in seen:
                raise TriangulationError("face %r glued twice" % (x,))
            seen.add(x)
        if (ta, fa) == (tb, fb):
            raise TriangulationError("face %r glued to itself" % ((ta, fa),))
    euf = ParityUnionFind()
    vuf = ParityUnionFind()
    for t in range(len(signs)):
        for e in TET_EDGES:
            euf.add((t, e))
        for k in range(4):
            vuf.add((t, k))
    for (ta, fa), (tb, fb), vm in gluings:
        va, vb = FACE_VERTS[fa], FACE_VERTS[fb]
        for k in range(3):
            vuf.union((ta, va[k]), (tb, vb[vm[k]]))
        for i, j in ((0, 1), (1, 2), (0, 2)):
            x, y = vb[vm[i]], vb[vm[j]]
            flip = 0 if x < y else 1
            if not euf.union((ta, (va[i], va[j])), (tb, (min(x, y), max(x, y))), flip):
                raise BranchingError("edge %d%d of tetrahedron %d is identified with itself reversed"
                                     % (va[i], va[j], ta))
    classes = {}
    for t in range(len(signs)):
        for e in TET_EDGES:
            classes.setdefault(euf.find((t, e)), []).append((t, e))
    for ms in classes.values():
        if len({euf.parity(m) for m in ms}) > 1:
            raise BranchingError("edge class %r has inconsistent orientation" % (sorted(ms)[0],))
    edge_classes = sorted((sorted(ms) for ms in classes.values()), key=lambda ms: ms[0])
    nv = len({vuf.find((t, k)) for t in range(len(signs)) for k in range(4)})
    return BranchedTriangulation(signs, gluings, edge_classes, nv)


def build_triangulation(g):
    """The branched ideal triangulation encoded by an o-graph.

    One tetrahedron per true vertex; each o-graph edge glues the face at its
    tail port to the face at its head port, preserving vertex order.
    """
    if not g.vertices:
        raise TriangulationError("o-graph has no true vertices")
    gluings = []
    for e in g.edges:
        fa = PORT_FACE[g.vertices[e.tail]][e.tail_port]
        fb = PORT_FACE[g.vertices[e.head]][e.head_port]
        gluings.append(((e.tail, fa), (e.head, fb), (0, 1, 2)))
    return glue_tetrahedra(g.vertices, gluings)


def face_of_edge(g, e):
    """(tetrahedron, face) glued along o-graph edge e, seen from its tail."""
    ed = g.edges[e]
    return ed.tail, PORT_FACE[g.vertices[ed.tail]][ed.tail_port]


def face_branch_order(T, face_class):
    """Edge classes (e1, e2, e3) of a face class with phi(e1) phi(e2) = phi(e3).

    For the face [abc] these are the classes of ab, bc and ac.
    """
    (t, f), _, _ = T.gluings[face_class]
    a, b, c = FACE_VERTS[f]
    return T.edge(t, a, b), T.edge(t, b, c), T.edge(t, a, c)


class ClosednessReport:
    def __init__(self, vertex_classes, edge_classes, tetrahedra):
        self.vertex_classes = vertex_classes
        self.edge_classes = edge_classes
        self.tetrahedra = tetrahedra
        self.C2 = vertex_classes == 1
        self.C3 = edge_classes == tetrahedra + 1
        self.ok = self.C2 and self.C3

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ClosednessReport(C2=%s [%d vertex classes], C3=%s [%d edges, %d tetrahedra])" % (
            self.C2, self.vertex_classes, self.C3, self.edge_classes, self.tetrahedra)


def check_closedness(T):
    """C2: one ideal vertex class.  C3: edge classes = tetrahedra + 1."""
    return ClosednessReport(T.vertex_classes, len(T.edge_classes), len(T.signs))


def h1_z2_rank(T):
    """Dimension of H^1(M; Z_2) from the edge classes and face relations."""
    rows = []
    for x, y, z in T.relations():
        r = np.zeros(len(T.edge_classes), dtype=np.uint8)
        for c in (x, y, z):
            r[c] ^= 1
        rows.append(r)
    A = np.array(rows) if rows else np.zeros((0, len(T.edge_classes)), dtype=np.uint8)
    return len(T.edge_classes) - _rank_gf2(A)


def _rank_gf2(A):
    A = A.copy() % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r, c]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        for r in range(rows):
            if r != rank and A[r, c]:
                A[r] ^= A[rank]
        rank += 1
    return rank


def gf2_rank(A):
    return _rank_gf2(np.asarray(A, dtype=np.uint8))


__all__ = ["PORT_FACE", "FACE_VERTS", "TET_EDGES", "BranchedTriangulation", "build_triangulation",
           "glue_tetrahedra", "check_closedness", "face_branch_order", "face_of_edge",
           "BranchingError", "TriangulationError", "h1_z2_rank", "gf2_rank",
           "ParityUnionFind"]
