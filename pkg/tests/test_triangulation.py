import pytest

from spinsum.diagram import extract_ograph
from spinsum.lens import lens_diagram
from spinsum.triangulation import (BranchingError, ParityUnionFind, TriangulationError,
                                   build_triangulation, check_closedness, face_branch_order,
                                   glue_tetrahedra, h1_z2_rank)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
def test_lens_counts(p):
    T = build_triangulation(extract_ograph(lens_diagram(p)))
    assert len(T.signs) == p
    assert len(T.face_classes) == 2 * p
    assert len(T.edge_classes) == p + 1
    assert T.vertex_classes == 1
    assert check_closedness(T).ok


@pytest.mark.parametrize("p, rank", [(1, 0), (2, 1), (3, 0), (4, 1), (5, 0), (6, 1)])
def test_h1_z2(p, rank):
    assert h1_z2_rank(build_triangulation(extract_ograph(lens_diagram(p)))) == rank


def test_every_edge_copy_has_one_class():
    T = build_triangulation(extract_ograph(lens_diagram(3)))
    members = [m for ms in T.edge_classes for m in ms]
    assert len(members) == len(set(members)) == 6 * 3


def test_face_relations_are_branch_ordered():
    T = build_triangulation(extract_ograph(lens_diagram(2)))
    for f in T.face_classes:
        x, y, z = face_branch_order(T, f)
        assert {x, y, z} <= set(range(len(T.edge_classes)))


def test_reversed_gluing_is_a_branching_error():
    # glue face 3 = [012] to face 0 = [123] with 0->2, 1->1, 2->0: edge 01 meets 32 reversed
    with pytest.raises(BranchingError):
        glue_tetrahedra([1], [((0, 3), (0, 0), (2, 1, 0))])


def test_face_glued_twice():
    with pytest.raises(TriangulationError):
        glue_tetrahedra([1, 1], [((0, 3), (1, 0), (0, 1, 2)), ((0, 3), (1, 1), (0, 1, 2))])


def test_dump_is_stable():
    T = build_triangulation(extract_ograph(lens_diagram(2)))
    assert T.dump() == build_triangulation(extract_ograph(lens_diagram(2))).dump()
    assert T.dump().splitlines()[0] == "tetrahedra 2"


def test_parity_union_find():
    u = ParityUnionFind()
    assert u.union("a", "b", 1)
    assert u.union("b", "c", 1)
    assert u.find("a") == u.find("c")
    assert u.parity("a") ^ u.parity("c") == 0
    assert not u.union("a", "c", 1)
    assert u.union("a", "c", 0)
