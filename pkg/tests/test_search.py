import random

import pytest

from trisect import (
    ALPHA,
    BETA,
    GAMMA,
    TRISECTION_PAIRS,
    SearchConfig,
    connected_sum,
    cp2_diagram,
    enumerate_slides,
    reduce_bigons,
    slide,
    stab_diagram,
    standard_cut_system,
    standard_heegaard,
    standardize,
    standardize_all,
    torus_diagram,
    validate_trisection,
    verify_certificate,
)
from trisect import moves as mv
from trisect import search as se
from trisect.diagram import FAILED


def scramble(d, n, rng, bound=1):
    applied = []
    for _ in range(n):
        ms = enumerate_slides(d, ALPHA, bound) + enumerate_slides(d, BETA, bound)
        if not ms:
            break
        m = ms[rng.randrange(len(ms))]
        applied.append(m)
        d = reduce_bigons(slide(d, m))
    return d, applied


def test_config_invariants():
    with pytest.raises(se.SearchError):
        SearchConfig(max_arc_crossings=-1)
    with pytest.raises(se.SearchError):
        SearchConfig(max_depth=-1)
    with pytest.raises(se.SearchError):
        SearchConfig(node_budget=0)


def test_enumerate_empty_for_single_curve():
    assert enumerate_slides(standard_cut_system(1), ALPHA, 3) == []


def test_enumerate_face_local_slides_exist():
    moves = enumerate_slides(standard_cut_system(2), ALPHA, 0)
    assert moves
    for m in moves:
        assert m.arc.crossings == ()
        # face-local slides really apply
        slide(standard_cut_system(2), m)


def test_enumerate_deterministic_order():
    d = standard_heegaard(2, 1)
    a = enumerate_slides(d, ALPHA, 2)
    b = enumerate_slides(d, ALPHA, 2)
    assert a == b
    shorter = enumerate_slides(d, ALPHA, 1)
    assert set(shorter) <= set(a)


def test_standardize_trivial_on_standards():
    for g, k in [(1, 0), (2, 1), (3, 2)]:
        out = standardize(standard_heegaard(g, k), (ALPHA, BETA), SearchConfig(2, 2, 50))
        assert out.found and out.certificate.k == k and not out.certificate.moves


def test_standardize_roundtrip_and_soundness():
    rng = random.Random(97)
    for g, k in [(2, 0), (2, 1), (2, 2)]:
        d, applied = scramble(standard_heegaard(g, k), 2, rng)
        out = standardize(d, (ALPHA, BETA), SearchConfig(4, 4, 400))
        assert out.found, (g, k)
        assert len(out.certificate.moves) <= len(applied) + 1
        assert verify_certificate(d, out.certificate).ok


def test_standardize_determinism():
    rng = random.Random(5150)
    d, _ = scramble(standard_heegaard(2, 1), 2, rng)
    cfg = SearchConfig(3, 2, 200)
    a = standardize(d, (ALPHA, BETA), cfg)
    b = standardize(d, (ALPHA, BETA), cfg)
    assert a == b


def test_standardize_monotone_in_budgets():
    rng = random.Random(640)
    d, _ = scramble(standard_heegaard(2, 1), 2, rng)
    base = standardize(d, (ALPHA, BETA), SearchConfig(3, 2, 300))
    assert base.found
    deeper = standardize(d, (ALPHA, BETA), SearchConfig(4, 2, 300))
    wider = standardize(d, (ALPHA, BETA), SearchConfig(3, 3, 300))
    assert deeper.found and len(deeper.certificate.moves) <= len(base.certificate.moves)
    assert wider.found and len(wider.certificate.moves) <= len(base.certificate.moves)


def test_exhausted_outcomes_are_honest():
    rng = random.Random(2001)
    d, applied = scramble(standard_heegaard(2, 1), 2, rng)
    assert applied
    out = standardize(d, (ALPHA, BETA), SearchConfig(max_depth=0, max_arc_crossings=2,
                                                     node_budget=10))
    if not out.found:
        assert out.depth_reached == 0 and out.nodes_expanded == 0
    tiny = standardize(d, (ALPHA, BETA), SearchConfig(4, 4, 1))
    assert tiny.found or tiny.budget_exceeded


def test_obstructed_pair_exhausts_and_fails_homology():
    t = torus_diagram([(ALPHA, "u", 1, 0), (BETA, "v", 1, 2), (GAMMA, "w", 0, 1)])
    d = connected_sum(t, stab_diagram(1))
    out = standardize(d, (ALPHA, BETA), SearchConfig(2, 1, 60))
    assert not out.found
    rep = validate_trisection(d)
    assert rep.level == FAILED


def test_standardize_all_fixtures():
    for d, want in [(stab_diagram(2), 3), (cp2_diagram(), 3)]:
        triple = standardize_all(d, SearchConfig(2, 2, 100))
        assert all(o.found for o in triple.outcomes)
        assert triple.augmented is not None
        assert triple.report.ok and triple.report.complexity == want


def test_pruning_safety_dedup_reaches_same_codes():
    # with and without deduplication, the reachable normalized codes at each
    # depth agree (deduplication only avoids re-expansion)
    rng = random.Random(8)
    d, _ = scramble(standard_heegaard(2, 1), 1, rng)
    start = reduce_bigons(mv._pair_subdiagram(d, (ALPHA, BETA)))

    def layers(dedup: bool, depth: int, arc: int):
        frontier = [start]
        seen = {mv.normalized_code(start)}
        out = [set(seen)]
        for _ in range(depth):
            nxt = []
            codes = set()
            for state in frontier:
                for move in enumerate_slides(state, ALPHA, arc) + enumerate_slides(
                    state, BETA, arc
                ):
                    child = reduce_bigons(slide(state, move))
                    code = mv.normalized_code(child)
                    codes.add(code)
                    if dedup:
                        if code in seen:
                            continue
                        seen.add(code)
                    nxt.append(child)
            out.append(codes)
            frontier = nxt
        return out

    a = layers(True, 2, 1)
    b = layers(False, 2, 1)
    assert a[1] == b[1]
    assert a[2] <= b[2]
    # every code reachable without dedup is reachable with dedup at <= depth
    all_a = set().union(*a)
    all_b = set().union(*b)
    assert all_b == all_a
