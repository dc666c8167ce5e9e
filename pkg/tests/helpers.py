"""Shared helpers and independent oracles for the test suite.

The oracles deliberately use different algorithms from the library code they
check: isomorphism by exhaustive root matching, Smith invariants by gcds of
minors, homology classes by integer linear algebra on the chain complex.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from trisect.combmap import CombMap


def standard_closed_scaffold_map(g: int) -> CombMap:
    """One-vertex genus-g map: 2g loops, rotation a1 b1 a1' b1' a2 b2 ..."""
    n = 4 * g
    sigma = [(d + 1) % n for d in range(n)]
    theta = [0] * n
    for i in range(g):
        theta[4 * i] = 4 * i + 2
        theta[4 * i + 2] = 4 * i
        theta[4 * i + 1] = 4 * i + 3
        theta[4 * i + 3] = 4 * i + 1
    return CombMap(sigma, theta)


def random_relabeling(n: int, rng: random.Random) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def brute_force_isomorphic(a: CombMap, b: CombMap) -> bool:
    """Exhaustive search for a sigma/theta/label/boundary-equivariant bijection.

    For connected maps a candidate is determined by the image of one dart,
    since sigma and theta act transitively; disconnected maps try component
    pairings exhaustively.  Practical for maps with at most ~12 darts.
    """
    if a.n != b.n:
        return False
    if a.n == 0:
        return True

    def match_component(comp_a, sub_b_roots):
        root = comp_a[0]
        for img in sub_b_roots:
            mapping = {root: img}
            stack = [root]
            ok = True
            while stack and ok:
                d = stack.pop()
                for fa, fb in ((a.sigma, b.sigma), (a.theta, b.theta)):
                    x, y = fa[d], fb[mapping[d]]
                    if x in mapping:
                        if mapping[x] != y:
                            ok = False
                            break
                    else:
                        mapping[x] = y
                        stack.append(x)
            if not ok:
                continue
            good = True
            for d, e in mapping.items():
                la = a.labels[d] if a.labels is not None else None
                lb = b.labels[e] if b.labels is not None else None
                if repr(la) != repr(lb) or ((d in a.boundary) != (e in b.boundary)):
                    good = False
                    break
            if good:
                return mapping
        return None

    comps_a = a.components()
    comps_b = b.components()
    if len(comps_a) != len(comps_b):
        return False
    for perm in itertools.permutations(range(len(comps_b))):
        assignment = {}
        ok = True
        for i, comp in enumerate(comps_a):
            target = comps_b[perm[i]]
            if len(comp) != len(target):
                ok = False
                break
            mapping = match_component(comp, target)
            if mapping is None:
                ok = False
                break
            assignment.update(mapping)
        if ok:
            return True
    return False


def smith_invariants_by_minors(entries: list[list[int]]) -> tuple[int, list[int]]:
    """Cokernel invariants of an integer matrix via determinant divisors.

    d_k = gcd of all k x k minors; the k-th invariant factor is d_k/d_{k-1}.
    Returns (free_rank_of_cokernel, torsion_coefficients >= 2).  Rows index
    the target group.
    """
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    r = min(rows, cols)

    def minor_gcd(k: int) -> int:
        g = 0
        for rset in itertools.combinations(range(rows), k):
            for cset in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[entries[i][j] for j in cset] for i in rset]))
        return g

    prev = 1
    factors = []
    rank = 0
    for k in range(1, r + 1):
        dk = minor_gcd(k)
        if dk == 0:
            break
        factors.append(dk // prev)
        prev = dk
        rank = k
    torsion = [f for f in factors if f > 1]
    return rows - rank, torsion


def homology_class_by_chain_complex(d, curve_name: str) -> tuple[int, ...]:
    """Independent homology oracle via the cellular chain complex.

    Solves [scaffold cycles | face boundaries] x = curve cycle over the
    rationals and reads off the scaffold-basis coefficients, which must be
    integers.  Shares no code with the crossing-count computation.
    """
    m = d.map
    edges = sorted({min(x, m.theta[x]) for x in range(m.n)})
    edge_index = {e: i for i, e in enumerate(edges)}

    def cycle_vector(darts):
        v = [0] * len(edges)
        for dart in darts:
            e = min(dart, m.theta[dart])
            v[edge_index[e]] += 1 if dart == e else -1
        return v

    g = d.genus
    basis_cols = []
    for i in range(g):
        for nm in (f"a{i + 1}", f"b{i + 1}"):
            basis_cols.append(cycle_vector(d.curve(nm).darts))
    face_cols = []
    for face in m.faces():
        face_cols.append(cycle_vector(face))
    target = cycle_vector(d.curve(curve_name).darts)

    cols = basis_cols + face_cols
    rows = len(edges)
    aug = [[Fraction(cols[c][r]) for c in range(len(cols))] + [Fraction(target[r])]
           for r in range(rows)]
    ncols = len(cols)
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, rows):
            if aug[rr][c] != 0:
                pr = rr
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for rr in range(rows):
            if rr != r and aug[rr][c] != 0:
                f = aug[rr][c]
                aug[rr] = [x - f * y for x, y in zip(aug[rr], aug[r])]
        pivots[c] = r
        r += 1
    for rr in range(r, rows):
        assert aug[rr][-1] == 0, "curve cycle not in the span; broken complex"
    out = []
    for c in range(2 * g):
        coef = aug[pivots[c]][-1] if c in pivots else Fraction(0)
        assert coef.denominator == 1
        out.append(int(coef))
    return tuple(out)


SEPARATING_GENUS2_WORD = "a1[2] b1[1] -a1[1] -b1[2]"


def _det(mat: list[list[int]]) -> int:
    """Integer determinant by fraction-free Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / inv
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)
