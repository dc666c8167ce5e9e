"""Algebraic invariants read off diagrams.

Homology classes of curves come from signed crossings with the standard
scaffold loops, intersection matrices from signed crossing counts between
two colors, abelian invariants from an exact integer Smith normal form, and
fundamental group presentations from traversing one color across the other's
cut system.  Trisection-level invariants combine these: parameters
(g; k1, k2, k3), the Euler characteristic 2 + g - k1 - k2 - k3, and the
first homology of the 4-manifold as the cokernel of the matrix of all curve
classes.

Crossing signs use one global convention: rotations are counterclockwise
and a crossing of oriented strands (c, s) is +1 when s leaves in the sector
immediately counterclockwise from c's outgoing direction.  The scaffold
loops are oriented so that the a/b pair on each handle meets with sign +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import diagram as dg
from .diagram import (
    ALPHA,
    BETA,
    CountMismatch,
    Curve,
    Diagram,
    GAMMA,
    NonStandardScaffold,
    TRISECTION_PAIRS,
    TrisectionParams,
)


class InvalidDiagram(dg.DiagramError):
    pass


class NotACutSystem(dg.DiagramError):
    pass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix dimensions inconsistent with entries")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return IntegerMatrix(len(rows), ncols, tuple(rows))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )


@dataclass(frozen=True)
class AbelianInvariants:
    """Cokernel shape Z^free_rank + Z/d1 + Z/d2 + ... with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("torsion coefficients must form a divisor chain")
            prev = d

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupPresentation:
    """Generators x1..xn and relators as tuples of signed generator indices.

    A relator entry +i / -i means x_i / x_i^-1 (1-based).  Words are stored
    freely and cyclically reduced.
    """

    generator_count: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for w in self.relators:
            for s in w:
                if s == 0 or abs(s) > self.generator_count:
                    raise ValueError(f"relator letter {s} out of range")

    def abelianized(self) -> IntegerMatrix:
        rows = []
        for w in self.relators:
            row = [0] * self.generator_count
            for s in w:
                row[abs(s) - 1] += 1 if s > 0 else -1
            rows.append(row)
        return IntegerMatrix.from_rows(rows, cols=self.generator_count)


def free_cyclic_reduce(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


# -- Smith normal form -------------------------------------------------------


def smith_form(m: IntegerMatrix) -> AbelianInvariants:
    """Invariants of the cokernel Z^rows / column-span of m.

    Exact integer elimination; the pivot is always an entry of least nonzero
    absolute value (first in row-major order on ties), which keeps runs
    deterministic across platforms.
    """
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    top = 0
    diag: list[int] = []
    while top < rows and top < cols:
        pr = pc = -1
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pr, pc = v, i, j
        if best is None:
            break
        a[top], a[pr] = a[pr], a[top]
        for row in a:
            row[top], row[pc] = row[pc], row[top]
        while True:
            reduced = False
            for i in range(top + 1, rows):
                if a[i][top]:
                    q = a[i][top] // a[top][top]
                    for j in range(top, cols):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        reduced = True
            for j in range(top + 1, cols):
                if a[top][j]:
                    q = a[top][j] // a[top][top]
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(top, rows):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        reduced = True
            if not reduced:
                break
        # enforce divisibility of the remaining block by the pivot
        piv = abs(a[top][top])
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % piv:
                    for jj in range(top, cols):
                        a[top][jj] += a[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        diag.append(piv)
        top += 1
    rank = len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(m.rows - rank, torsion)


# -- crossing signs and homology ---------------------------------------------


def _standard_scaffold_pairs(d: Diagram) -> list[tuple[str, str]]:
    g = d.genus
    names = d.scaffold_names()
    expected = [f"{ab}{i + 1}" for i in range(g) for ab in ("a", "b")]
    if g == 0:
        return []
    if sorted(names) != sorted(expected) or d.boundary_count != 0:
        raise NonStandardScaffold(
            f"expected closed standard scaffold a1,b1..a{g},b{g}; found {names}"
        )
    return [(f"a{i + 1}", f"b{i + 1}") for i in range(g)]


def _crossing_sign(d: Diagram, out_c: int, out_s: int) -> int:
    """Sign of the crossing where strand c leaves via out_c and s via out_s."""
    m = d.map
    if m.sigma[out_c] == out_s:
        return 1
    if m.sigma[out_s] == out_c:
        return -1
    raise InvalidDiagram(f"darts {out_c}, {out_s} do not flank a transverse crossing")


def _signed_crossings(d: Diagram, c: Curve, s: Curve) -> int:
    """Sum of crossing signs between two oriented curves (by stored order)."""
    m = d.map
    s_darts = set(s.darts)
    total = 0
    for i, dart in enumerate(c.darts):
        nxt = c.darts[(i + 1) % len(c.darts)]
        v = m.vertex_darts(nxt)
        if len(v) != 4:
            continue
        others = [x for x in v if x != nxt and x != m.theta[dart]]
        hits = [x for x in others if x in s_darts]
        if len(hits) != 1:
            continue
        total += _crossing_sign(d, nxt, hits[0])
    return total


def homology_class(d: Diagram, curve: str | Curve) -> tuple[int, ...]:
    """Class of a curve in H1 of the surface, basis a1, b1, ..., ag, bg.

    Computed as signed crossing counts with the scaffold loops; the
    coefficient of a_i is the signed count against b_i and vice versa (with
    a sign), because the basis pairs satisfy <a_i, b_i> = +1.  The stored
    traversal orientation of the curve fixes the overall sign.
    """
    c = d.curve(curve) if isinstance(curve, str) else curve
    pairs = _standard_scaffold_pairs(d)
    vec: list[int] = []
    for a_name, b_name in pairs:
        p = _signed_crossings(d, c, d.curve(b_name))
        q = -_signed_crossings(d, c, d.curve(a_name))
        vec.extend((p, q))
    return tuple(vec)


def symplectic_product(u: Sequence[int], v: Sequence[int]) -> int:
    """Pairing sum of (p_i q_i' - q_i p_i') over handles."""
    total = 0
    for i in range(0, len(u), 2):
        total += u[i] * v[i + 1] - u[i + 1] * v[i]
    return total


def intersection_matrix(d: Diagram, color_a: str, color_b: str) -> IntegerMatrix:
    """Signed crossing counts between the curves of two colors.

    Entry (i, j) pairs the i-th color_a curve with the j-th color_b curve in
    curve order; it equals the symplectic pairing of their homology classes.
    """
    g = d.genus
    ca = d.curves_of(color_a)
    cb = d.curves_of(color_b)
    if len(ca) != g or len(cb) != g:
        raise CountMismatch(
            f"need {g} curves per color, found {len(ca)} {color_a} and {len(cb)} {color_b}"
        )
    rows = [[_signed_crossings(d, a, b) for b in cb] for a in ca]
    return IntegerMatrix.from_rows(rows, cols=g)


def h1_heegaard(d: Diagram, pair: tuple[str, str] = (ALPHA, BETA)) -> AbelianInvariants:
    """First homology of the 3-manifold presented by a Heegaard pair."""
    return smith_form(intersection_matrix(d, pair[0], pair[1]))


def pi1_presentation(d: Diagram, pair: tuple[str, str] = (ALPHA, BETA)) -> GroupPresentation:
    """Presentation with one generator per A-curve and one relator per B-curve.

    Generators are dual to the A cut system; each B-curve contributes the
    word of its signed A-crossings in traversal order.
    """
    a_color, b_color = pair
    rep = dg.is_cut_system(d, a_color)
    if not rep.ok:
        raise NotACutSystem(f"{a_color} is not a cut system: {rep.reason}")
    m = d.map
    a_curves = d.curves_of(a_color)
    gen_of: dict[str, int] = {c.name: i + 1 for i, c in enumerate(a_curves)}
    a_darts = {dart: c.name for c in a_curves for dart in c.darts}
    relators = []
    for bc in d.curves_of(b_color):
        word: list[int] = []
        for i, dart in enumerate(bc.darts):
            nxt = bc.darts[(i + 1) % len(bc.darts)]
            v = m.vertex_darts(nxt)
            if len(v) != 4:
                continue
            others = [x for x in v if x != nxt and x != m.theta[dart]]
            outs = [x for x in others if x in a_darts]
            if not outs:
                continue
            out_a = outs[0]
            sign = _crossing_sign(d, nxt, out_a)
            word.append(sign * gen_of[a_darts[out_a]])
        relators.append(free_cyclic_reduce(word))
    return GroupPresentation(len(a_curves), tuple(relators))


# -- trisection-level invariants ----------------------------------------------


@dataclass(frozen=True)
class TrisectionInvariants:
    params: TrisectionParams
    certified: bool
    euler_characteristic: int
    h1: AbelianInvariants
    pair_h1: dict[tuple[str, str], AbelianInvariants]

    def __str__(self) -> str:
        flag = "certified" if self.certified else "estimated"
        return (
            f"{self.params} ({flag}) chi={self.euler_characteristic} "
            f"H1={self.h1}"
        )


def trisection_invariants(d: Diagram, certs=None) -> TrisectionInvariants:
    """Parameters, Euler characteristic, and homology of a trisection diagram.

    Requires the diagram to grade at least HOMOLOGICALLY-CONSISTENT; the k
    values are certificate-backed when every pair is CERTIFIED and rank
    estimates otherwise.  chi is 2 + g - k1 - k2 - k3 and H1 of the
    4-manifold is the cokernel of the 2g x 3g matrix of all curve classes.
    """
    report = dg.validate_trisection(d, certs)
    if report.params is None:
        raise InvalidDiagram("diagram does not validate as a trisection")
    g = d.genus
    params = report.params
    chi = 2 + g - params.k1 - params.k2 - params.k3
    cols: list[list[int]] = []
    for color in (ALPHA, BETA, GAMMA):
        for c in d.curves_of(color):
            cols.append(list(homology_class(d, c)))
    if g == 0:
        h1 = AbelianInvariants(0)
    else:
        mat = IntegerMatrix.from_rows(
            [[col[r] for col in cols] for r in range(2 * g)], cols=len(cols)
        )
        h1 = smith_form(mat)
    pair_h1 = {pair: h1_heegaard(d, pair) for pair in TRISECTION_PAIRS}
    return TrisectionInvariants(
        params=params,
        certified=report.level == dg.CERTIFIED,
        euler_characteristic=chi,
        h1=h1,
        pair_h1=pair_h1,
    )
