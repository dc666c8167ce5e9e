import itertools
import random

import pytest

from trisect.combmap import (
    CombMap,
    FixedPointInTheta,
    MapError,
    NotACurveSystem,
    NotPermutation,
    OddDartPairing,
    build_map,
    canonical_code,
    colored_isomorphic,
    cut_along,
    genus_and_boundary,
)

from helpers import (
    brute_force_isomorphic,
    random_relabeling,
    standard_closed_scaffold_map,
)


def sphere_loop():
    return build_map(2, [1, 0], [1, 0])


def test_sphere_loop_counts():
    m = sphere_loop()
    assert len(m.vertices()) == 1
    assert m.edge_count == 1
    assert len(m.faces()) == 2
    assert m.euler_characteristic() == 2
    assert genus_and_boundary(m) == (0, 0)


@pytest.mark.parametrize("g", [1, 2, 3, 5])
def test_standard_one_vertex_map_genus(g):
    m = standard_closed_scaffold_map(g)
    assert len(m.vertices()) == 1
    assert m.edge_count == 2 * g
    assert len(m.faces()) == 1
    assert genus_and_boundary(m) == (g, 0)


def test_genus2_orbit_count_by_hand():
    # phi on the 8-dart one-vertex map, orbit written out by hand.
    m = standard_closed_scaffold_map(2)
    orbit = [0]
    while True:
        nxt = m.phi(orbit[-1])
        if nxt == 0:
            break
        orbit.append(nxt)
    assert orbit == [0, 3, 2, 1, 4, 7, 6, 5]


def test_build_map_rejects_bad_input():
    with pytest.raises(NotPermutation):
        build_map(2, [0, 0], [1, 0])
    with pytest.raises(NotPermutation):
        build_map(2, [1, 0], [0, 0])
    with pytest.raises(FixedPointInTheta):
        build_map(2, [1, 0], [0, 1])
    with pytest.raises(OddDartPairing):
        build_map(3, [1, 2, 0], [1, 2, 0])


def test_euler_formula_every_component():
    rng = random.Random(7)
    for g in range(4):
        m = standard_closed_scaffold_map(g) if g else sphere_loop()
        v = len(m.vertices())
        f = len(m.faces())
        assert v - m.edge_count + f == 2 - 2 * g
        perm = random_relabeling(m.n, rng)
        r = m.relabeled(perm)
        assert r.euler_characteristic() == m.euler_characteristic()


def test_boundary_declared_disk_and_annulus():
    # disk: one vertex, one loop, outer side is a hole
    disk = build_map(2, [1, 0], [1, 0], boundary=[1])
    assert genus_and_boundary(disk) == (0, 1)
    # annulus: one vertex, two loops, both outer sides are holes
    ann = build_map(4, [1, 2, 3, 0], [1, 0, 3, 2], boundary=[1, 3])
    assert genus_and_boundary(ann) == (0, 2)
    # bordered genus one
    m = build_map(6, [1, 2, 3, 4, 5, 0], [2, 3, 0, 1, 5, 4], boundary=[5])
    assert genus_and_boundary(m) == (1, 1)


def test_cut_torus_along_essential_loop_gives_annulus():
    torus = standard_closed_scaffold_map(1)
    cut = cut_along(torus, [0])
    assert cut.is_connected
    assert genus_and_boundary(cut) == (0, 2)
    assert cut.euler_characteristic() == torus.euler_characteristic()


def test_cut_genus2_along_one_handle_loop():
    m = standard_closed_scaffold_map(2)
    cut = cut_along(m, [0])
    assert cut.is_connected
    assert genus_and_boundary(cut) == (1, 2)


def test_cut_standard_cut_system_gives_punctured_sphere():
    # The scaffold loops all share the base vertex, so cut one at a time;
    # cut_along keeps old dart ids, and each cut frees the next loop.
    for g in (1, 2, 3):
        cut = standard_closed_scaffold_map(g)
        for i in range(g):
            cut = cut_along(cut, [4 * i])
        assert cut.is_connected
        assert genus_and_boundary(cut) == (0, 2 * g)


def test_cut_null_homotopic_loop_disconnects():
    # Sphere with two vertices joined by two parallel edges; each edge pair
    # forms a null-homotopic circle splitting the sphere into two disks.
    m = build_map(4, [3, 2, 1, 0], [1, 0, 3, 2])
    assert genus_and_boundary(m) == (0, 0)
    cut = cut_along(m, [0, 2])
    assert not cut.is_connected
    assert sorted(cut.component_summaries()) == [(0, 1), (0, 1)]


def test_cut_additivity_of_characteristic_and_boundary():
    m = standard_closed_scaffold_map(3)
    cut = cut_along(cut_along(m, [0]), [4])
    assert cut.euler_characteristic() == m.euler_characteristic()
    total_boundary = sum(b for _, b in cut.component_summaries())
    assert total_boundary == 4


def test_cut_rejects_non_curve():
    m = standard_closed_scaffold_map(2)
    # all four loops at one vertex: 8 incident cut darts, not 2-regular
    with pytest.raises(NotACurveSystem):
        cut_along(m, [0, 1, 4, 5])


def test_canonical_code_relabeling_invariance():
    rng = random.Random(20240817)
    fixtures = [sphere_loop(), standard_closed_scaffold_map(1),
                standard_closed_scaffold_map(2)]
    labeled = CombMap([1, 2, 3, 0], [2, 3, 0, 1],
                      labels=["red", "red", "blue", "blue"])
    fixtures.append(labeled)
    for m in fixtures:
        code = canonical_code(m)
        for _ in range(100):
            perm = random_relabeling(m.n, rng)
            assert canonical_code(m.relabeled(perm)) == code


def test_canonical_code_distinguishes_genus():
    assert canonical_code(sphere_loop()) != canonical_code(
        standard_closed_scaffold_map(1)
    )
    # the two one-vertex maps with two darts per edge on 4 darts:
    # sphere (nested loops) vs torus (interleaved loops)
    sphere2 = CombMap([1, 2, 3, 0], [3, 2, 1, 0])
    torus = standard_closed_scaffold_map(1)
    assert genus_and_boundary(sphere2) == (0, 0)
    assert canonical_code(sphere2) != canonical_code(torus)


def enumerate_four_dart_maps():
    """All maps on 4 darts: sigma any permutation, theta any FPF involution."""
    thetas = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    for sigma in itertools.permutations(range(4)):
        for theta in thetas:
            yield CombMap(list(sigma), theta)


def test_code_equality_matches_brute_force_isomorphism():
    maps = list(enumerate_four_dart_maps())
    codes = [canonical_code(m) for m in maps]
    for i, a in enumerate(maps):
        for j in range(i, len(maps)):
            b = maps[j]
            same_code = codes[i] == codes[j]
            assert same_code == brute_force_isomorphic(a, b)
            witness = colored_isomorphic(a, b)
            assert (witness is not None) == same_code


def test_colored_isomorphic_identity_and_relabeling():
    m = standard_closed_scaffold_map(2)
    assert colored_isomorphic(m, m) is not None
    rng = random.Random(5)
    perm = random_relabeling(m.n, rng)
    r = m.relabeled(perm)
    w = colored_isomorphic(m, r)
    assert w is not None
    for d in range(m.n):
        assert w[m.sigma[d]] == r.sigma[w[d]]
        assert w[m.theta[d]] == r.theta[w[d]]


def random_closed_map(n_darts, rng, labels=None):
    while True:
        sigma = random_relabeling(n_darts, rng)
        darts = list(range(n_darts))
        rng.shuffle(darts)
        theta = [0] * n_darts
        for i in range(0, n_darts, 2):
            a, b = darts[i], darts[i + 1]
            theta[a], theta[b] = b, a
        try:
            return CombMap(sigma, theta, labels=labels)
        except MapError:
            continue


def test_code_matches_brute_force_on_random_labeled_maps():
    rng = random.Random(1959)
    pool = []
    for _ in range(24):
        labels_src = [rng.choice(["r", "g"]) for _ in range(4)]
        m = random_closed_map(8, rng)
        labels = [labels_src[min(d, m.theta[d]) % 4] for d in range(8)]
        labels = [labels_src[min(d, m.theta[d]) % 4] for d in range(8)]
        m = CombMap(m.sigma, m.theta, labels=labels)
        pool.append(m)
    for i, a in enumerate(pool):
        for b in pool[i:]:
            same = canonical_code(a) == canonical_code(b)
            assert same == brute_force_isomorphic(a, b)
            assert (colored_isomorphic(a, b) is not None) == same


def test_colored_isomorphic_respects_labels():
    plain = CombMap([1, 2, 3, 0], [2, 3, 0, 1])
    ab = CombMap([1, 2, 3, 0], [2, 3, 0, 1], labels=["a", "b", "a", "b"])
    ba = CombMap([1, 2, 3, 0], [2, 3, 0, 1], labels=["b", "a", "b", "a"])
    aa = CombMap([1, 2, 3, 0], [2, 3, 0, 1], labels=["a", "a", "a", "a"])
    assert colored_isomorphic(plain, ab) is None
    assert colored_isomorphic(ab, aa) is None
    # swapping the two loop labels is realized by a quarter turn of the torus
    assert colored_isomorphic(ab, ba) is not None


def test_without_edges_deletes_and_merges_faces():
    m = standard_closed_scaffold_map(1)
    # deleting loop b from the torus leaves a non-cellular candidate; the
    # remaining loop has one face on both sides, so the result is a map of a
    # sphere-like pinched object. Only check dart bookkeeping here.
    sub = m.without_edges([1])
    assert sub.n == 2
    assert sub.edge_count == 1
