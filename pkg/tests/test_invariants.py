import random

import pytest

from trisect import (
    ALPHA,
    BETA,
    GAMMA,
    TRISECTION_PAIRS,
    AbelianInvariants,
    IntegerMatrix,
    cp2_diagram,
    h1_heegaard,
    homology_class,
    intersection_matrix,
    pi1_presentation,
    s1s3_diagram,
    s4_diagram,
    smith_form,
    stab_diagram,
    standard_cut_system,
    standard_heegaard,
    torus_diagram,
    trisection_invariants,
)
from trisect import invariants as iv
from trisect import moves as mv
from trisect import search as se
from trisect.diagram import CountMismatch

from helpers import homology_class_by_chain_complex, smith_invariants_by_minors


M = IntegerMatrix.from_rows


def test_smith_form_small_cases():
    assert smith_form(M([[0]])) == AbelianInvariants(1)
    assert smith_form(M([[2]])) == AbelianInvariants(0, (2,))
    assert smith_form(M([[2, 0], [0, 3]])) == AbelianInvariants(0, (6,))
    assert smith_form(M([[1, 0], [0, 1]])) == AbelianInvariants(0)
    assert smith_form(IntegerMatrix(0, 0, ())) == AbelianInvariants(0)
    assert smith_form(M([[0, 0], [0, 0]])) == AbelianInvariants(2)


def test_smith_form_against_minors_oracle():
    rng = random.Random(90125)
    for _ in range(120):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        entries = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        got = smith_form(M(entries))
        free, torsion = smith_invariants_by_minors(entries)
        assert (got.free_rank, list(got.torsion)) == (free, torsion), entries


def test_abelian_invariants_divisor_chain():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (3, 2))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    assert str(AbelianInvariants(2, (2, 4))) == "Z^2 + Z/2 + Z/4"


def test_homology_classes_of_standard_curves():
    d = stab_diagram(1)
    assert homology_class(d, "x") in ((1, 0), (-1, 0))
    assert homology_class(d, "z") in ((0, 1), (0, -1))


def test_homology_class_matches_chain_complex_oracle():
    fixtures = [
        cp2_diagram(),
        s1s3_diagram(),
        standard_heegaard(2, 1),
        torus_diagram([(ALPHA, "u", 2, 1), (BETA, "v", 1, -1)]),
    ]
    for d in fixtures:
        for c in d.curves:
            if c.color == "scaffold":
                continue
            assert homology_class(d, c.name) == homology_class_by_chain_complex(d, c.name)


def test_homology_class_requires_standard_scaffold():
    d = torus_diagram([(ALPHA, "u", 1, 0)])
    cut = dgm_restrict_break(d)
    with pytest.raises(iv.NonStandardScaffold):
        homology_class(cut, "u")


def dgm_restrict_break(d):
    # rename a scaffold curve so the basis is unrecognizable
    from trisect.diagram import Curve, Diagram

    curves = [
        Curve("w1" if c.name == "a1" else c.name, c.color, c.darts) for c in d.curves
    ]
    return Diagram(d.map, curves)


def test_intersection_matrices():
    for g, k in [(1, 0), (1, 1), (2, 1), (3, 0), (3, 3)]:
        m = intersection_matrix(standard_heegaard(g, k), ALPHA, BETA)
        for i in range(g):
            for j in range(g):
                want = 0 if (i != j or i < k) else 1
                assert abs(m.entries[i][j]) == want
    assert intersection_matrix(standard_heegaard(1, 1), ALPHA, BETA).entries == ((0,),)
    cp2 = cp2_diagram()
    assert abs(intersection_matrix(cp2, GAMMA, ALPHA).entries[0][0]) == 1


def test_intersection_antisymmetry_and_symplectic_consistency():
    fixtures = [cp2_diagram(), s1s3_diagram(), stab_diagram(2), standard_heegaard(2, 1)]
    for d in fixtures:
        pairs = TRISECTION_PAIRS if d.curves_of(GAMMA) else ((ALPHA, BETA),)
        for a, b in pairs:
            ab = intersection_matrix(d, a, b)
            ba = intersection_matrix(d, b, a)
            for i in range(ab.rows):
                for j in range(ab.cols):
                    assert ab.entries[i][j] == -ba.entries[j][i]
            ca, cb = d.curves_of(a), d.curves_of(b)
            for i, u in enumerate(ca):
                for j, w in enumerate(cb):
                    sym = iv.symplectic_product(
                        homology_class(d, u), homology_class(d, w)
                    )
                    assert ab.entries[i][j] == sym


def test_intersection_matrix_count_mismatch():
    d = torus_diagram([(ALPHA, "u", 1, 0), (ALPHA, "u2", 1, 0), (BETA, "v", 0, 1)])
    with pytest.raises(CountMismatch):
        intersection_matrix(d, ALPHA, BETA)


def test_h1_heegaard_fixed_values():
    assert h1_heegaard(standard_heegaard(1, 0)).trivial
    assert str(h1_heegaard(standard_heegaard(1, 1))) == "Z"
    for g, k in [(2, 0), (2, 2), (3, 1)]:
        got = h1_heegaard(standard_heegaard(g, k))
        assert got == AbelianInvariants(k)


def test_pi1_presentations():
    p = pi1_presentation(standard_heegaard(1, 0))
    assert p.generator_count == 1 and [abs(s) for s in p.relators[0]] == [1]
    p = pi1_presentation(standard_heegaard(1, 1))
    assert p.generator_count == 1 and p.relators == ((),)
    p = pi1_presentation(standard_heegaard(2, 1))
    words = sorted(tuple(abs(s) for s in w) for w in p.relators)
    assert words == [(), (2,)]


def test_pi1_abelianization_matches_intersection_matrix():
    for d in [standard_heegaard(2, 0), standard_heegaard(3, 2), cp2_diagram()]:
        p = pi1_presentation(d, (ALPHA, BETA))
        ab = p.abelianized()
        m = intersection_matrix(d, BETA, ALPHA)
        rows_got = sorted(tuple(r) for r in ab.entries)
        rows_want = sorted(tuple(r) for r in m.entries)
        rows_want_neg = sorted(tuple(-x for x in r) for r in m.entries)
        assert rows_got in (rows_want, rows_want_neg)


def test_pi1_requires_cut_system():
    d = torus_diagram([(ALPHA, "u", 1, 0), (ALPHA, "u2", 1, 0), (BETA, "v", 0, 1)])
    with pytest.raises(iv.NotACutSystem):
        pi1_presentation(d, (ALPHA, BETA))


def test_trisection_invariants_fixture_table():
    table = [
        (s4_diagram(), (0, 0, 0, 0), 2, "0"),
        (s1s3_diagram(), (1, 1, 1, 1), 0, "Z"),
        (cp2_diagram(), (1, 0, 0, 0), 3, "0"),
        (stab_diagram(1), (1, 1, 0, 0), 2, "0"),
        (stab_diagram(2), (1, 0, 1, 0), 2, "0"),
        (stab_diagram(3), (1, 0, 0, 1), 2, "0"),
    ]
    for d, (g, k1, k2, k3), chi, h1 in table:
        t = trisection_invariants(d)
        assert (t.params.g,) + t.params.ks == (g, k1, k2, k3)
        assert t.euler_characteristic == chi
        assert str(t.h1) == h1
        assert t.certified


def test_euler_characteristic_formula_and_stabilization():
    for d in [cp2_diagram(), s1s3_diagram(), stab_diagram(1)]:
        base = trisection_invariants(d)
        for i in (1, 2, 3):
            t = trisection_invariants(mv.stabilize(d, i))
            assert t.euler_characteristic == base.euler_characteristic
            assert str(t.h1) == str(base.h1)
            assert t.params.g == base.params.g + 1
            want = list(base.params.ks)
            want[i - 1] += 1
            assert list(t.params.ks) == want
            assert t.euler_characteristic == 2 + t.params.g - sum(t.params.ks)


def test_h1_invariance_under_moves():
    rng = random.Random(4242)
    d = standard_heegaard(2, 1)
    before = h1_heegaard(d)
    work = d
    for _ in range(6):
        candidates = se.enumerate_slides(work, ALPHA, 1) + se.enumerate_slides(work, BETA, 1)
        work = mv.reduce_bigons(mv.slide(work, candidates[rng.randrange(len(candidates))]))
        assert h1_heegaard(work) == before
    assert h1_heegaard(mv.stabilize_heegaard(d)) == before
