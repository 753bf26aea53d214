import pytest

from spinsum.algebra import zn_example_cocycle
from spinsum.diagram import Event, validate
from spinsum.lens import lens_diagram
from spinsum.moves import (MACROS, MP_TABLE, REGISTRY, RULES, MoveError, Site, _commuted, apply_move,
                           find_sites, fuzz_invariance, local_gluing_signature, make_site)
from spinsum.statesum import invariant_Z

LENS = [(1, 1), (2, 1), (2, 2), (3, 1), (4, 1), (4, 2)]


def test_every_rule_has_instances():
    for r in RULES:
        assert r.instances, r.name
        # both sides end with the same strand directions
        assert all(len(dirs) == r.width for dirs in r.instances)


def test_registry_flags():
    rows = {r["move"]: r for r in REGISTRY.listing()}
    for f in ("R2", "R3", "R3-vertex", "slide", "zigzag", "R1-framed", "commute", "0-2", "MP"):
        assert rows[f]["enabled"], f
    assert not rows["CP"]["enabled"] and not rows["H"]["enabled"]
    assert rows["MP"]["rules"] == 8 and rows["MP"]["revalidate"]


@pytest.mark.parametrize("kind, lhs, rhs", MP_TABLE)
def test_mp_rows_keep_boundary_gluing(kind, lhs, rhs):
    a, b = local_gluing_signature(lhs, 3), local_gluing_signature(rhs, 3)
    assert a[:2] == b[:2]
    assert a[2] == b[2] == 5
    assert (a[3], b[3]) == (9, 10)


def test_sites_are_deterministic():
    d = lens_diagram(2, 2)
    assert find_sites(d, "R2") == find_sites(d, "R2")
    with pytest.raises(MoveError):
        find_sites(d, "nope")


def _grown(seed, steps=25):
    d = lens_diagram(2, 1).replace(expectations=())
    rep = fuzz_invariance(d, zn_example_cocycle(2), steps=steps, seed=seed)
    assert rep.ok
    return rep.final


@pytest.mark.parametrize("seed", range(4))
def test_moves_are_locally_inverse(seed):
    d = _grown(seed)
    for fam in ("R2", "R3", "R3-vertex", "slide", "zigzag", "R1-framed", "MP"):
        for s in find_sites(d, fam)[:6]:
            new = apply_move(d, s)
            back = Site(s.move, s.index, s.pos,
                        "backward" if s.direction == "forward" else "forward", None)
            assert apply_move(new, back).events == d.events


def test_commute_is_an_involution():
    d = _grown(5, 40)
    for s in find_sites(d, "commute"):
        new = apply_move(d, s)
        assert apply_move(new, s).events == d.events


def test_commute_arithmetic():
    cross = lambda p: Event("cross", p, None)
    assert _commuted(cross(0), cross(1)) is None
    assert _commuted(Event("cap", 2, "ccw"), cross(0)) == (cross(0), Event("cap", 2, "ccw"))
    assert _commuted(Event("cup", 0, "cw"), cross(2)) == (cross(0), Event("cup", 0, "cw"))
    assert _commuted(cross(3), Event("cup", 0, "ccw")) == (Event("cup", 0, "ccw"), cross(5))


def test_revalidated_moves_only_offer_valid_sites():
    d = _grown(1, 30)
    for fam in ("0-2", "MP"):
        for s in find_sites(d, fam):
            assert validate(apply_move(d, s)).ok


def test_apply_rejects_wrong_site():
    d = lens_diagram(2, 1)
    with pytest.raises(MoveError):
        apply_move(d, Site("R3", 0, 0, "forward", None))
    with pytest.raises(MoveError):
        apply_move(d, Site("commute", len(d.events), 0, "forward", None))


def test_macros_reach_their_moves():
    d = lens_diagram(2, 1)
    k = next(i for i, e in enumerate(d.events) if e.kind == "vertex")
    p = d.events[k].pos
    z0 = invariant_Z(d, zn_example_cocycle(2)).value
    for fam, dk, dp in MACROS["R3-vertex"]:
        s = make_site(d, fam, k + dk, p + dp)
        assert s is not None, fam
        d = apply_move(d, s)
        assert invariant_Z(d, zn_example_cocycle(2)).value == z0


@pytest.mark.parametrize("p, s", LENS)
@pytest.mark.parametrize("n", [2, 4])
def test_fuzz_keeps_z(p, s, n):
    rep = fuzz_invariance(lens_diagram(p, s), zn_example_cocycle(n), steps=60, seed=p + s)
    assert rep.ok, rep.failure
    assert len(rep.history) == 60


def test_fuzz_zero_steps():
    rep = fuzz_invariance(lens_diagram(2, 2), zn_example_cocycle(2), steps=0)
    assert rep.ok and rep.history == []


def test_fuzz_is_reproducible():
    a = fuzz_invariance(lens_diagram(3, 1), zn_example_cocycle(2), steps=30, seed=9).to_json()
    b = fuzz_invariance(lens_diagram(3, 1), zn_example_cocycle(2), steps=30, seed=9).to_json()
    assert a == b


def test_fuzz_covers_every_enabled_family():
    seen = set()
    for seed in range(3):
        rep = fuzz_invariance(lens_diagram(2, 2), zn_example_cocycle(2), steps=100, seed=seed)
        seen |= set(rep.counts())
    assert seen == set(REGISTRY.enabled_families())


def test_wrong_crossing_pairing_fails_at_vertex_pass():
    fams = ["R2", "R3", "R3-vertex", "slide", "zigzag", "R1-framed", "commute"]
    for seed in range(3):
        rep = fuzz_invariance(lens_diagram(4, 1), zn_example_cocycle(4), steps=100, seed=seed,
                              families=fams, pairing="corrupt")
        assert not rep.ok
        assert rep.failure["move"].startswith("R3")


def test_wrong_crossing_pairing_fails_with_all_moves():
    for p, s in [(2, 1), (2, 2), (4, 1)]:
        rep = fuzz_invariance(lens_diagram(p, s), zn_example_cocycle(2), steps=100, seed=0,
                              pairing="corrupt")
        assert not rep.ok
