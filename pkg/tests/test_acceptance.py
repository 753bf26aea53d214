"""Acceptance criteria, one test each.

Under pytest a summary line per criterion is printed at the end of the run
(see conftest.py).  Run directly to get the same lines without pytest:

    python3 tests/test_acceptance.py
"""
import io
import json
import os
import random
import sys
import time
from contextlib import redirect_stdout

from spinsum.algebra import (Scalar, SuperCocycle, check_super3cocycle, cp_identity_violations,
                             gauge_transform, group_by_name, load_cocycle_table,
                             mp_identity_violations, r3_sign_identity_violations, trivial_cocycle,
                             zn_example_cocycle)
from spinsum.cli import main as cli_main
from spinsum.diagram import extract_ograph, load_diagram
from spinsum.lens import DATA, bundled, lens_diagram, spin_weight_classes
from spinsum.moves import fuzz_invariance
from spinsum.statesum import brute_force_colorings, invariant_Z, lens_formula_eval
from spinsum.triangulation import build_triangulation, check_closedness

TABLES = ["z2_gauge.cocycle", "z2_conjugate.cocycle", "s3_trivial.cocycle"]


def _cli_json(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, json.loads(buf.getvalue())


def test_ac1_lens21_values():
    """AC1 L(2,1) with the Z_2 example cocycle gives exactly 1-i (s1) and 1+i (s2) in under 1 s"""
    t = time.perf_counter()
    code1, r1 = _cli_json("compute", "lens_p2_s1", "--cocycle", "zn:2", "--json")
    code2, r2 = _cli_json("compute", "lens_p2_s2", "--cocycle", "zn:2", "--json")
    elapsed = time.perf_counter() - t
    assert code1 == code2 == 0
    assert r1["value_exact"] == {"root_order": 4, "coefficients": [1, -1]}
    assert r2["value_exact"] == {"root_order": 4, "coefficients": [1, 1]}
    assert r1["value_float"] == [1.0, -1.0] and r2["value_float"] == [1.0, 1.0]
    assert elapsed < 1.0, elapsed


def test_ac2_formula_matches_pipeline():
    """AC2 lens_formula_eval equals the full pipeline on L(2,1) for trivial, zn:2 and table cocycles"""
    cs = [trivial_cocycle(group_by_name("Z2")), trivial_cocycle(group_by_name("Z4")),
          zn_example_cocycle(2)]
    cs += [load_cocycle_table(os.path.join(DATA, t)) for t in TABLES]
    for c in cs:
        f1, f2 = lens_formula_eval(c)
        assert invariant_Z(lens_diagram(2, 1), c).value == f1, c.name
        assert invariant_Z(lens_diagram(2, 2), c).value == f2, c.name


def _near_misses():
    def perturb(c, where, factor):
        n = c.group.order
        al = [[[c.alpha(a, b, k) for k in range(n)] for b in range(n)] for a in range(n)]
        a, b, k = where
        al[a][b][k] = al[a][b][k] * factor
        return SuperCocycle(c.group, c.omega_table, al, name="near-miss")

    c2 = zn_example_cocycle(2)
    c3 = zn_example_cocycle(3)
    c4 = zn_example_cocycle(4)
    drop_omega = SuperCocycle(c2.group, [[0, 0], [0, 0]],
                              [[[c2.alpha(a, b, k) for k in range(2)] for b in range(2)] for a in range(2)])
    return [perturb(c2, (1, 1, 1), Scalar.root(4)),
            perturb(c2, (0, 1, 1), Scalar.integer(-1, 4)),
            perturb(c3, (1, 2, 1), Scalar.root(6, 3)),
            perturb(c4, (2, 3, 1), Scalar.root(8)),
            drop_omega]


def test_ac3_cocycle_verification():
    """AC3 zn cocycles pass for n = 1..8 over all n^4 tuples and near-miss tables are rejected, in under 5 s"""
    t = time.perf_counter()
    for n in range(1, 9):
        rep = check_super3cocycle(zn_example_cocycle(n))
        assert rep.ok and rep.checked == n ** 4, n
    misses = _near_misses()
    rejected = sum(1 for m in misses if not check_super3cocycle(m).ok)
    assert rejected == len(misses) >= 3
    assert time.perf_counter() - t < 5.0


def test_ac4_homomorphism_counts():
    """AC4 trivial cocycle: Z(L(p,1)) = #{g : g^p = 1} = brute-force coloring count, p = 1..6, G in Z2 Z3 Z4 Z6 S3"""
    for name in ("Z2", "Z3", "Z4", "Z6", "S3"):
        G = group_by_name(name)
        c = trivial_cocycle(G)
        for p in range(1, 7):
            d = lens_diagram(p)
            T = build_triangulation(extract_ograph(d))
            assert G.order ** len(T.edge_classes) <= 10 ** 6
            brute = sum(1 for _ in brute_force_colorings(T, G))
            roots = sum(1 for g in G.elements() if G.power(g, p) == G.identity)
            z = invariant_Z(d, c).value
            assert z == Scalar.integer(brute, c.N), (name, p)
            assert brute == roots, (name, p)


def test_ac5_fuzz_bundled():
    """AC5 100-step fuzz on every bundled diagram, trivial and zn:2 cocycles, seeds 0-2, under 60 s"""
    t = time.perf_counter()
    files = [f for f in bundled() if f.endswith(".morse")]
    assert len(files) == 6
    for f in files:
        d = load_diagram(os.path.join(DATA, f))
        for c in (trivial_cocycle(group_by_name("Z2")), zn_example_cocycle(2)):
            for seed in range(3):
                rep = fuzz_invariance(d, c, steps=100, seed=seed)
                assert rep.ok, (f, c.name, seed, rep.failure)
                assert len(rep.history) == 100
    assert time.perf_counter() - t < 60.0


def _accepted_cocycles():
    rng = random.Random(0)
    cs = [zn_example_cocycle(n) for n in range(1, 9)]
    for name in ("Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "S3"):
        cs.append(trivial_cocycle(group_by_name(name)))
    for n in (2, 3, 4):
        c = zn_example_cocycle(n)
        beta = [0] + [rng.randint(0, 1) for _ in range(n - 1)]
        mu = [[Scalar.root(c.N, rng.randrange(c.N)) for _ in range(n)] for _ in range(n)]
        cs.append(gauge_transform(c, beta, mu))
    cs += [load_cocycle_table(os.path.join(DATA, t)) for t in TABLES]
    return [c for c in cs if c.group.order <= 8 and check_super3cocycle(c).ok]


def test_ac6_proof_identities():
    """AC6 R3, MP and CP identities hold for every accepted cocycle with |G| <= 8"""
    cs = _accepted_cocycles()
    assert len(cs) >= 20
    for c in cs:
        assert not r3_sign_identity_violations(c), c.name
        assert not mp_identity_violations(c), c.name
        assert not cp_identity_violations(c), c.name


def test_ac7_spin_discrimination():
    """AC7 S keeps two weight classes for p = 2, 4 (distinct Z for p = 2) and one for p = 1, 3"""
    expected = {1: 1, 2: 2, 3: 1, 4: 2}
    for p, k in expected.items():
        classes = spin_weight_classes(lens_diagram(p))
        assert len(classes) == k, (p, len(classes))
    c = zn_example_cocycle(2)
    values = []
    for cl in spin_weight_classes(lens_diagram(2)):
        vs = {invariant_Z(d, c).value for _, d in cl}
        assert len(vs) == 1
        values.append(vs.pop())
    assert set(values) == {Scalar([1, -1], 4), Scalar([1, 1], 4)}


def test_ac8_structural_counts():
    """AC8 L(p,1) gives p tetrahedra, 2p face classes, p+1 edge classes and one ideal vertex"""
    for p in range(1, 7):
        for s in ((1, 2) if p % 2 == 0 else (1,)):
            T = build_triangulation(extract_ograph(lens_diagram(p, s)))
            assert len(T.signs) == p
            assert len(T.face_classes) == 2 * p
            assert len(T.edge_classes) == p + 1
            assert T.vertex_classes == 1
            assert check_closedness(T).ok


CRITERIA = [test_ac1_lens21_values, test_ac2_formula_matches_pipeline, test_ac3_cocycle_verification,
            test_ac4_homomorphism_counts, test_ac5_fuzz_bundled, test_ac6_proof_identities,
            test_ac7_spin_discrimination, test_ac8_structural_counts]


def summary_line(fn, passed, elapsed=None):
    doc = fn.__doc__.strip()
    tag, text = doc.split(" ", 1)
    t = "" if elapsed is None else "  (%.2fs)" % elapsed
    return "%s %s  %s%s" % (tag, "PASS" if passed else "FAIL", text, t)


if __name__ == "__main__":
    bad = 0
    for fn in CRITERIA:
        t = time.perf_counter()
        try:
            fn()
            ok = True
        except AssertionError as e:
            ok = False
            bad += 1
            err = e
        print(summary_line(fn, ok, time.perf_counter() - t))
        if not ok:
            print("    %r" % (err,))
    sys.exit(1 if bad else 0)
