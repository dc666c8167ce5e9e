"""Diagrams: surfaces with colored curve systems, and their validation.

A :class:`Diagram` is a combinatorial map whose edges are colored
``scaffold`` / ``alpha`` / ``beta`` / ``gamma`` together with named curves.
The scaffold is a connected cellular graph (by default the standard
one-vertex system of 2g loops) that pins down the surface even when the
colored curves do not fill it.  Curves are embedded circles crossing each
other and the scaffold transversally at 4-valent vertices; same-color curves
are disjoint.

Standard constructors build cut systems, Heegaard diagrams, the genus-1
stabilization diagrams, and small fixture diagrams for S^4, S^1 x S^3 and
CP^2.  Validators check the cut-system property (cutting yields a connected
planar surface) and grade trisection diagrams as CERTIFIED /
HOMOLOGICALLY-CONSISTENT / FAILED.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .combmap import CombMap, MapError, cut_along

SCAFFOLD = "scaffold"
ALPHA = "alpha"
BETA = "beta"
GAMMA = "gamma"
CURVE_COLORS = (ALPHA, BETA, GAMMA)
ALL_COLORS = (SCAFFOLD,) + CURVE_COLORS

TRISECTION_PAIRS = ((ALPHA, BETA), (BETA, GAMMA), (GAMMA, ALPHA))


class DiagramError(ValueError):
    """Base error for malformed diagrams."""


class ParamOutOfRange(DiagramError):
    pass


class CountMismatch(DiagramError):
    pass


class NonStandardScaffold(DiagramError):
    pass


@dataclass(frozen=True)
class TrisectionParams:
    """Parameters (g; k1, k2, k3) of a trisection."""

    g: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        if self.g < 0:
            raise ParamOutOfRange(f"genus {self.g} < 0")
        for k in (self.k1, self.k2, self.k3):
            if not (0 <= k <= self.g):
                raise ParamOutOfRange(f"k = {k} outside [0, {self.g}]")

    @property
    def ks(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    @property
    def balanced(self) -> bool:
        return self.k1 == self.k2 == self.k3

    def __str__(self) -> str:
        if self.balanced:
            return f"({self.g},{self.k1})"
        return f"({self.g};{self.k1},{self.k2},{self.k3})"


@dataclass(frozen=True)
class Curve:
    """A named closed curve: the out-dart of each of its edges in order."""

    name: str
    color: str
    darts: tuple[int, ...]

    def edges(self) -> frozenset[int]:
        return frozenset(self.darts)


class Diagram:
    """Immutable diagram: a labeled map plus its named curves.

    ``curves`` includes the scaffold curves (loops ``a1, b1, ...`` of the
    standard system, subdivided by crossings) as well as the colored ones.
    ``curve_order`` fixes a per-color ordering used by searches and reports;
    validity never depends on it.
    """

    __slots__ = ("map", "curves", "curve_order", "certificates", "_by_name", "_owner")

    def __init__(
        self,
        cmap: CombMap,
        curves: Sequence[Curve],
        curve_order: Optional[Mapping[str, Sequence[str]]] = None,
        certificates: Mapping = (),
        check: bool = True,
    ):
        self.map = cmap
        self.curves = tuple(curves)
        order: dict[str, tuple[str, ...]] = {}
        for color in ALL_COLORS:
            if curve_order and color in curve_order:
                order[color] = tuple(curve_order[color])
            else:
                order[color] = tuple(c.name for c in self.curves if c.color == color)
        self.curve_order = order
        self.certificates = dict(certificates)
        self._by_name = {c.name: c for c in self.curves}
        if len(self._by_name) != len(self.curves):
            raise DiagramError("duplicate curve names")
        for color in ALL_COLORS:
            have = {c.name for c in self.curves if c.color == color}
            if set(order[color]) != have:
                raise DiagramError(
                    f"curve order for {color} lists {sorted(order[color])}, "
                    f"curves are {sorted(have)}"
                )
        owner = {}
        for c in self.curves:
            for d in c.darts:
                owner[d] = c
                owner[cmap.theta[d]] = c
        self._owner = owner
        if check:
            self.validate()

    # -- accessors -----------------------------------------------------------

    @property
    def genus(self) -> int:
        return self.map.genus_boundary()[0]

    @property
    def boundary_count(self) -> int:
        return self.map.genus_boundary()[1]

    def curve(self, name: str) -> Curve:
        return self._by_name[name]

    def has_curve(self, name: str) -> bool:
        return name in self._by_name

    def curves_of(self, color: str) -> tuple[Curve, ...]:
        return tuple(self._by_name[n] for n in self.curve_order[color])

    def color_of(self, dart: int) -> str:
        return self.map.labels[dart]

    def owner_of(self, dart: int) -> Curve:
        return self._owner[dart]

    def crossing_count(self, color_a: str, color_b: str) -> int:
        """Number of transverse crossings between two colors."""
        count = 0
        for v in self.map.vertices():
            if len(v) != 4:
                continue
            cols = {self.color_of(d) for d in v}
            if cols == {color_a, color_b}:
                count += 1
        return count

    def scaffold_names(self) -> tuple[str, ...]:
        return self.curve_order[SCAFFOLD]

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        m = self.map
        if m.labels is None:
            raise DiagramError("diagram map carries no colors")
        for d in range(m.n):
            if m.labels[d] not in ALL_COLORS:
                raise DiagramError(f"dart {d} has unknown color {m.labels[d]!r}")
        covered: dict[int, str] = {}
        for c in self.curves:
            if not c.darts:
                raise DiagramError(f"curve {c.name} has no edges")
            for i, d in enumerate(c.darts):
                if m.labels[d] != c.color:
                    raise DiagramError(f"curve {c.name} color mismatch on dart {d}")
                e = min(d, m.theta[d])
                if e in covered:
                    raise DiagramError(f"edge {e} on two curves")
                covered[e] = c.name
                nxt = c.darts[(i + 1) % len(c.darts)]
                if m.vertex_index(m.theta[d]) != m.vertex_index(nxt):
                    raise DiagramError(f"curve {c.name} is not a closed walk")
        for d in range(m.n):
            if min(d, m.theta[d]) not in covered:
                raise DiagramError(f"edge of dart {d} belongs to no curve")
        self._validate_vertices()
        self._validate_scaffold()

    def _validate_vertices(self) -> None:
        m = self.map
        for v in m.vertices():
            colors = [self.color_of(d) for d in v]
            if all(c == SCAFFOLD for c in colors):
                continue  # a scaffold base vertex, any degree
            if len(v) != 4:
                raise DiagramError(f"non-scaffold vertex {v} is not 4-valent")
            owners = [self._owner[d].name for d in v]
            if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
                raise DiagramError(f"vertex {v} is not a transverse double point")
            c0, c1 = colors[0], colors[1]
            if c0 == c1:
                # same color means same or parallel curves touching: forbidden
                raise DiagramError(f"same-color crossing at vertex {v}")

    def _validate_scaffold(self) -> None:
        m = self.map
        curve_darts = [d for d in range(m.n) if m.labels[d] != SCAFFOLD]
        scaffold_map = m.without_edges(curve_darts) if curve_darts else m
        if scaffold_map.n == 0:
            raise DiagramError("diagram has an empty scaffold")
        if not scaffold_map.is_connected:
            raise DiagramError("scaffold is disconnected")
        if scaffold_map.genus_boundary() != m.genus_boundary():
            raise DiagramError("scaffold is not cellular in the surface")


# -- standard scaffolds ------------------------------------------------------


def scaffold_diagram(g: int, boundary: int = 0) -> Diagram:
    """Bare diagram with the standard scaffold and no colored curves.

    For genus >= 1 the scaffold is the one-vertex system of loops
    ``a1, b1, ..., ag, bg`` in rotation order ``a1 b1 a1 b1 a2 ...``; genus 0
    uses a single equator loop ``o``.  Each boundary circle adds a loop
    ``c1, c2, ...`` whose outer side is a hole.
    """
    if g < 0 or boundary < 0:
        raise ParamOutOfRange("genus and boundary count must be >= 0")
    sigma: list[int] = []
    theta: dict[int, int] = {}
    curves: list[Curve] = []
    if g == 0:
        sigma = [1, 0]
        theta = {0: 1, 1: 0}
        curves.append(Curve("o", SCAFFOLD, (0,)))
        base = 2
    else:
        base = 4 * g
        sigma = [(d + 1) % base for d in range(base)]
        for i in range(g):
            theta[4 * i] = 4 * i + 2
            theta[4 * i + 2] = 4 * i
            theta[4 * i + 1] = 4 * i + 3
            theta[4 * i + 3] = 4 * i + 1
            curves.append(Curve(f"a{i + 1}", SCAFFOLD, (4 * i,)))
            curves.append(Curve(f"b{i + 1}", SCAFFOLD, (4 * i + 1,)))
    holes = []
    for j in range(boundary):
        x, y = base + 2 * j, base + 2 * j + 1
        theta[x] = y
        theta[y] = x
        holes.append(y)
        curves.append(Curve(f"c{j + 1}", SCAFFOLD, (x,)))
    n = base + 2 * boundary
    full_sigma = [0] * n
    ring = list(range(len(sigma))) + [base + 2 * j + s for j in range(boundary) for s in (0, 1)]
    if g == 0:
        ring = [0, 1] + ring[2:]
    for a, b in zip(ring, ring[1:] + ring[:1]):
        full_sigma[a] = b
    theta_list = [theta[d] for d in range(n)]
    labels = [SCAFFOLD] * n
    cmap = CombMap(full_sigma, theta_list, holes, labels)
    return Diagram(cmap, curves)


# -- standard diagrams (built from chord words) ------------------------------


def _compile(genus: int, curve_words, boundary: int = 0) -> Diagram:
    from . import _chords

    spec = _chords.ChordSpec(
        genus=genus,
        boundary=boundary,
        curves=tuple(
            _chords.ChordCurveSpec(color=c, name=n, word=tuple(_chords.parse_word_tokens(w)))
            for (c, n, w) in curve_words
        ),
    )
    return _chords.compile_chords(spec)


def standard_cut_system(g: int) -> Diagram:
    """Genus-g diagram whose alpha curves are the standard cut system."""
    if g < 0:
        raise ParamOutOfRange("genus must be >= 0")
    if g == 0:
        return scaffold_diagram(0)
    words = [(ALPHA, f"m{i + 1}", f"b{i + 1}[1]") for i in range(g)]
    return _compile(g, words)


def standard_heegaard(g: int, k: int) -> Diagram:
    """The standard genus-g Heegaard diagram with k parallel handle pairs.

    Handles 1..k carry disjoint parallel alpha/beta pairs; the remaining
    handles carry pairs meeting exactly once, so the diagram has g - k
    crossings and presents the connected sum of k copies of S^1 x S^2.
    """
    if g < 0 or not (0 <= k <= g):
        raise ParamOutOfRange(f"need 0 <= k <= g, got (g, k) = ({g}, {k})")
    if g == 0:
        return scaffold_diagram(0)
    words = []
    for i in range(1, g + 1):
        words.append((ALPHA, f"m{i}", f"b{i}[1]"))
        if i <= k:
            words.append((BETA, f"l{i}", f"b{i}[2]"))
        else:
            words.append((BETA, f"l{i}", f"a{i}[1]"))
    return _compile(g, words)


def stab_diagram(i: int) -> Diagram:
    """Genus-1 stabilization diagram number i (1, 2 or 3).

    Two colors are parallel meridians, the third is a transverse longitude;
    the index says which color pair is parallel, cycling the roles.
    """
    if i not in (1, 2, 3):
        raise ParamOutOfRange(f"stabilization index must be 1, 2 or 3, got {i}")
    mu1, mu2, lam = "b1[1]", "b1[2]", "a1[1]"
    if i == 1:
        words = [(ALPHA, "x", mu1), (BETA, "y", mu2), (GAMMA, "z", lam)]
    elif i == 2:
        words = [(ALPHA, "x", lam), (BETA, "y", mu1), (GAMMA, "z", mu2)]
    else:
        words = [(ALPHA, "x", mu1), (BETA, "y", lam), (GAMMA, "z", mu2)]
    return _compile(1, words)


def s4_diagram() -> Diagram:
    """The genus-0 trisection diagram of the 4-sphere (no curves)."""
    return scaffold_diagram(0)


def s1s3_diagram() -> Diagram:
    """(T^2; mu, mu, mu): the genus-1 diagram of S^1 x S^3."""
    return _compile(1, [(ALPHA, "x", "b1[1]"), (BETA, "y", "b1[2]"),
                        (GAMMA, "z", "b1[3]")])


def cp2_diagram() -> Diagram:
    """Torus diagram with curve classes (1,0), (0,1), (1,1): presents CP^2."""
    return _compile(1, [(ALPHA, "x", "b1[1]"), (BETA, "y", "a1[1]"),
                        (GAMMA, "z", "a1[2] b1[2]")])


def torus_diagram(curves: Sequence[tuple[str, str, int, int]]) -> Diagram:
    """Genus-1 diagram with curves of prescribed slope classes.

    ``curves`` lists (color, name, p, q) with p, q coprime; each curve is the
    straight (p, q) line on the flat torus with a small offset, so distinct
    classes meet each other minimally and parallel copies are disjoint.
    """
    from fractions import Fraction

    from . import _chords

    events: dict[str, list] = {}
    offsets = [(Fraction(1, 5), Fraction(1, 7)), (Fraction(1, 11), Fraction(1, 13)),
               (Fraction(1, 17), Fraction(1, 19)), (Fraction(1, 23), Fraction(1, 29)),
               (Fraction(1, 31), Fraction(1, 37)), (Fraction(1, 41), Fraction(1, 43))]
    if len(curves) > len(offsets):
        raise ParamOutOfRange("too many torus curves for the fixed offset table")
    for (color, name, p, q), (ox, oy) in zip(curves, offsets):
        if p == q == 0 or math.gcd(abs(p), abs(q)) != 1:
            raise ParamOutOfRange(f"(p, q) = ({p}, {q}) is not a coprime pair")
        evs = []
        for n in range(0 if p < 0 else 1, abs(p) + (0 if p < 0 else 1)):
            t = (Fraction(n if p > 0 else -n) - ox) / p
            evs.append((t % 1, "b1", (oy + q * (t % 1)) % 1, 1 if p > 0 else -1))
        for n in range(0 if q < 0 else 1, abs(q) + (0 if q < 0 else 1)):
            t = (Fraction(n if q > 0 else -n) - oy) / q
            evs.append((t % 1, "a1", (ox + p * (t % 1)) % 1, 1 if q > 0 else -1))
        for _, _, pos, _ in evs:
            if pos == 0:
                raise ParamOutOfRange("curve offset degenerate: crossing at the base vertex")
        evs.sort()
        events[name] = evs
    rank: dict[tuple[str, int], int] = {}
    for edge in ("a1", "b1"):
        pts = sorted(
            (e[2], name, i)
            for name, evs in events.items()
            for i, e in enumerate(evs)
            if e[1] == edge
        )
        if len({p for p, _, _ in pts}) != len(pts):
            raise ParamOutOfRange("two curves cross the scaffold at the same point")
        for rk, (_, name, i) in enumerate(pts, start=1):
            rank[(name, i)] = rk
    specs = []
    for color, name, p, q in curves:
        word = tuple(
            _chords.Transit(e[3], e[1], rank[(name, i)])
            for i, e in enumerate(events[name])
        )
        specs.append(_chords.ChordCurveSpec(color, name, word))
    return _chords.compile_chords(_chords.ChordSpec(1, 0, tuple(specs)))


# -- cut systems and diagram-level validation --------------------------------


@dataclass(frozen=True)
class CutSystemReport:
    ok: bool
    reason: str = ""


def is_cut_system(d: Diagram, color: str) -> CutSystemReport:
    """Whether the curves of one color cut the surface to a punctured sphere."""
    g = d.genus
    curves = d.curves_of(color)
    if len(curves) != g:
        return CutSystemReport(False, f"CountMismatch: {len(curves)} curves on genus {g}")
    if g == 0:
        return CutSystemReport(True)
    edge_darts = [dd for c in curves for dd in c.darts]
    try:
        cut = cut_along(d.map, edge_darts)
    except MapError as e:
        return CutSystemReport(False, f"NotACurveSystem: {e}")
    if not cut.is_connected:
        return CutSystemReport(False, "cut disconnects the surface")
    gb = cut.genus_boundary()
    if gb != (0, 2 * g):
        return CutSystemReport(False, f"cut surface has (genus, boundary) = {gb}")
    return CutSystemReport(True)


@dataclass(frozen=True)
class HeegaardReport:
    genus: int
    crossings: int
    alpha: CutSystemReport
    beta: CutSystemReport

    @property
    def valid(self) -> bool:
        return self.alpha.ok and self.beta.ok


def validate_heegaard(d: Diagram, pair: tuple[str, str] = (ALPHA, BETA)) -> HeegaardReport:
    """Cut-system verdict for both colors of a Heegaard pair.

    A color passing the cut-system test makes the pair (surface, curves)
    diffeomorphic to the standard handlebody side, so two passes certify a
    genuine Heegaard diagram.
    """
    a, b = pair
    return HeegaardReport(
        genus=d.genus,
        crossings=d.crossing_count(a, b),
        alpha=is_cut_system(d, a),
        beta=is_cut_system(d, b),
    )


CERTIFIED = "CERTIFIED"
HOMOLOGICALLY_CONSISTENT = "HOMOLOGICALLY-CONSISTENT"
FAILED = "FAILED"


@dataclass(frozen=True)
class PairVerdict:
    pair: tuple[str, str]
    level: str
    k: Optional[int] = None
    detail: str = ""


@dataclass(frozen=True)
class TrisectionReport:
    verdicts: tuple[PairVerdict, PairVerdict, PairVerdict]
    params: Optional[TrisectionParams]

    @property
    def level(self) -> str:
        levels = [v.level for v in self.verdicts]
        if all(l == CERTIFIED for l in levels):
            return CERTIFIED
        if all(l in (CERTIFIED, HOMOLOGICALLY_CONSISTENT) for l in levels):
            return HOMOLOGICALLY_CONSISTENT
        return FAILED


def validate_trisection(d: Diagram, certs: Optional[Mapping] = None) -> TrisectionReport:
    """Grade each color pair of a trisection diagram.

    CERTIFIED means a stored or supplied certificate replays and lands on a
    standard Heegaard diagram; HOMOLOGICALLY-CONSISTENT means both cut
    systems check out and the pair's intersection matrix has free cokernel
    Z^k (necessary for presenting #^k(S^1 x S^2)); anything else is FAILED.
    The reported k values are proofs only on certified pairs, estimates
    otherwise.
    """
    from . import invariants, moves

    verdicts = []
    ks = []
    g = d.genus
    for pair in TRISECTION_PAIRS:
        cert = None
        if certs and pair in certs:
            cert = certs[pair]
        elif pair in d.certificates:
            cert = d.certificates[pair]
        if cert is None:
            # a pair that is standard without any slides certifies itself
            cert = moves.make_depth0_certificate(d, pair)
        if cert is not None:
            rep = moves.verify_certificate(d, cert)
            if rep.ok:
                verdicts.append(PairVerdict(pair, CERTIFIED, rep.k))
                ks.append(rep.k)
                continue
            verdicts.append(PairVerdict(pair, FAILED, None, f"certificate: {rep.detail}"))
            ks.append(None)
            continue
        ra = is_cut_system(d, pair[0])
        rb = is_cut_system(d, pair[1])
        if not (ra.ok and rb.ok):
            why = "; ".join(r.reason for r in (ra, rb) if not r.ok)
            verdicts.append(PairVerdict(pair, FAILED, None, why))
            ks.append(None)
            continue
        inv = invariants.h1_heegaard(d, pair)
        if inv.torsion:
            verdicts.append(
                PairVerdict(pair, FAILED, None, f"pair homology has torsion {inv.torsion}")
            )
            ks.append(None)
            continue
        verdicts.append(PairVerdict(pair, HOMOLOGICALLY_CONSISTENT, inv.free_rank,
                                    "k is an estimate"))
        ks.append(inv.free_rank)
    params = None
    if all(k is not None for k in ks):
        try:
            params = TrisectionParams(g, ks[0], ks[1], ks[2])
        except ParamOutOfRange:
            params = None
    return TrisectionReport(tuple(verdicts), params)


def equivalent_diagrams(d1: Diagram, d2: Diagram) -> bool:
    """Equality up to isotopy moves we track: bigon reduction, scaffold
    minimization, then colored map isomorphism.  Sound but possibly
    incomplete; suitable for deduplication and fixture identities."""
    from .moves import normalized_code

    return normalized_code(d1) == normalized_code(d2)


def validate_relative(d: Diagram, reference: Diagram) -> bool:
    """Compare a bordered diagram against a user-supplied reference model."""
    if d.boundary_count == 0 or reference.boundary_count != d.boundary_count:
        return False
    return equivalent_diagrams(d, reference)
