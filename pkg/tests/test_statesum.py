import json
import random

import pytest

from spinsum.algebra import (Scalar, group_by_name, make_cyclic_group, make_symmetric_group,
                             trivial_cocycle, zn_example_cocycle)
from spinsum.diagram import extract_ograph, validate
from spinsum.lens import lens_diagram
from spinsum.planar import add_curls, random_planar
from spinsum.statesum import (StateSumError, brute_force_colorings, enumerate_admissible,
                              invariant_Z, lens_formula_eval, theta)
from spinsum.triangulation import build_triangulation


def sqrt2_1pi(sign, N=8):
    # +-sqrt(2)(1+i) = +-2 zeta_8
    return Scalar([0, 2 * sign], N)


@pytest.mark.parametrize("p, s, n, expected", [
    (2, 1, 2, Scalar([1, -1], 4)),
    (2, 2, 2, Scalar([1, 1], 4)),
    (3, 1, 2, Scalar([1], 4)),
    (4, 1, 2, Scalar([0], 4)),
    (4, 2, 2, Scalar([0], 4)),
    (2, 1, 4, Scalar([1, 0, -1], 8)),
    (2, 2, 4, Scalar([1, 0, 1], 8)),
    (3, 1, 4, Scalar([1], 8)),
    (4, 1, 4, sqrt2_1pi(-1)),
    (4, 2, 4, sqrt2_1pi(1)),
])
def test_lens_values(p, s, n, expected):
    assert invariant_Z(lens_diagram(p, s), zn_example_cocycle(n)).value == expected


def _random_triangulations(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = random_planar(rng.randint(1, 3), rng)
        if d is not None:
            out.append(build_triangulation(extract_ograph(d)))
    return out


@pytest.mark.parametrize("group", ["Z2", "Z3", "S3"])
def test_enumeration_matches_brute_force(group):
    G = group_by_name(group)
    for T in _random_triangulations(8, sum(map(ord, group))):
        if len(G.elements()) ** len(T.edge_classes) > 50000:
            continue
        fast = list(enumerate_admissible(T, G))
        assert fast == sorted(fast)
        assert fast == sorted(brute_force_colorings(T, G))


def test_terms_sum_to_value():
    c = zn_example_cocycle(4)
    r = invariant_Z(lens_diagram(4, 2), c, terms=True)
    total = c.zero()
    for col, th, w in r.terms:
        total = total + th * w
    assert total == r.value
    assert len(r.terms) == r.coloring_count == 4


def test_theta_is_a_sign():
    d = lens_diagram(2, 2)
    rep = validate(d)
    c = zn_example_cocycle(2)
    for phi in enumerate_admissible(rep.triangulation, c.group):
        t = theta(rep.graph, rep.triangulation, phi, c)
        assert t == c.one() or t == -c.one()


def test_invalid_diagram_raises_named_condition():
    d = add_curls(lens_diagram(2, 1).replace(expectations=()), [0, 1, 0, 0])
    with pytest.raises(StateSumError) as e:
        invariant_Z(d, zn_example_cocycle(2))
    assert e.value.condition == "S"


def test_lens_formula_against_pipeline():
    for c in [trivial_cocycle(make_cyclic_group(2)), zn_example_cocycle(2), zn_example_cocycle(4),
              trivial_cocycle(make_symmetric_group(3))]:
        f1, f2 = lens_formula_eval(c)
        assert invariant_Z(lens_diagram(2, 1), c).value == f1
        assert invariant_Z(lens_diagram(2, 2), c).value == f2


def test_json_is_byte_stable():
    a = invariant_Z(lens_diagram(2, 1), zn_example_cocycle(2), terms=True).dumps()
    b = invariant_Z(lens_diagram(2, 1), zn_example_cocycle(2), terms=True).dumps()
    assert a == b
    obj = json.loads(a)
    assert obj["value_exact"] == {"root_order": 4, "coefficients": [1, -1]}
    assert obj["value_float"] == [1.0, -1.0]


def test_float_mode_agrees():
    c = zn_example_cocycle(2)
    n = c.group.order
    fl = type(c)(c.group, c.omega_table,
                 [[[Scalar(value=c.alpha(a, b, k).to_float()) for k in range(n)] for b in range(n)]
                  for a in range(n)], name="float")
    z = invariant_Z(lens_diagram(2, 1), fl).float_value
    assert abs(z - (1 - 1j)) < 1e-9
