"""Diagram transformations: handle slides, bigon reduction, sums, certificates.

A handle slide replaces curve i by the band sum of curve i with curve j
along an embedded arc.  Arcs are combinatorial face paths: a start dart on
curve i (the band leaves through that dart's face side), an ordered list of
darts whose edges the arc crosses, and an end dart on curve j.  The slide
routes a two-strand band along the arc, splices it into a framed parallel
copy of curve j pushed off on the arrival side, and rebuilds the diagram;
crossing orders along an edge that the arc visits several times are resolved
by the standard nesting order of non-crossing chords, so the result is exact
and deterministic.

Bigon reduction removes empty two-sided faces (an isotopy), connected sum
plumbs two diagrams at their scaffold base vertices, and stabilization is
connected sum with a standard genus-1 diagram.  Certificates replay slide
sequences and check the terminal diagram against a standard Heegaard
diagram by colored isomorphism.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import diagram as dg
from ._surgery import Builder, SurgeryError
from .combmap import CombMap, canonical_code, colored_isomorphic
from .diagram import (
    ALPHA,
    BETA,
    Curve,
    Diagram,
    DiagramError,
    SCAFFOLD,
    TRISECTION_PAIRS,
)


class MoveError(DiagramError):
    pass


class SameCurve(MoveError):
    pass


class SameColorRequired(MoveError):
    pass


class ArcNotRealizable(MoveError):
    pass


class ArcHitsSlidingColor(MoveError):
    pass


class BoundaryPresent(MoveError):
    pass


class MoveFailed(MoveError):
    def __init__(self, step: int, detail: str):
        super().__init__(f"move {step} failed: {detail}")
        self.step = step
        self.detail = detail


class TerminalNotStandard(MoveError):
    pass


@dataclass(frozen=True)
class SlideArc:
    start: int
    crossings: tuple[int, ...]
    end: int


@dataclass(frozen=True)
class SlideMove:
    color: str
    curve_i: str
    curve_j: str
    arc: SlideArc


# -- arc planning -------------------------------------------------------------


@dataclass
class _ArcPlan:
    faces: list[int]
    per_edge: dict[int, list[int]]  # canonical dart -> visit ids along it
    side: str  # pushoff side, "L" or "R" of curve j's traversal
    j_seq: list[int]
    arrival_index: int  # position of edge(end) in j's traversal


def _point_dart(d: Diagram, move: SlideMove, idx: int, incoming: bool) -> int:
    """Dart on which arc point idx lies, seen from the given chord's face."""
    arc = move.arc
    k = len(arc.crossings)
    if idx == 0:
        return arc.start
    if idx == k + 1:
        return arc.end
    c = arc.crossings[idx - 1]
    return c if incoming else d.map.theta[c]


def _chord_endpoints(d: Diagram, move: SlideMove, t: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Chord t joins (point t on its dart) to (point t+1 on its dart)."""
    return (
        (t, _point_dart(d, move, t, incoming=False)),
        (t + 1, _point_dart(d, move, t + 1, incoming=True)),
    )


def _plan_arc(d: Diagram, move: SlideMove) -> _ArcPlan:
    m = d.map
    if move.curve_i == move.curve_j:
        raise SameCurve(f"cannot slide {move.curve_i} over itself")
    for nm in (move.curve_i, move.curve_j):
        if not d.has_curve(nm):
            raise MoveError(f"no curve named {nm}")
        if d.curve(nm).color != move.color:
            raise SameColorRequired(
                f"curve {nm} has color {d.curve(nm).color}, slide color is {move.color}"
            )
    arc = move.arc
    for dart in (arc.start, arc.end) + tuple(arc.crossings):
        if not (0 <= dart < m.n):
            raise MoveError(f"arc references dart {dart}, map has {m.n} darts")
    if d.owner_of(arc.start).name != move.curve_i:
        raise MoveError(f"arc start dart {arc.start} is not on {move.curve_i}")
    if d.owner_of(arc.end).name != move.curve_j:
        raise MoveError(f"arc end dart {arc.end} is not on {move.curve_j}")

    faces = [m.face_index(arc.start)]
    for c in arc.crossings:
        if m.labels[c] == move.color:
            raise ArcHitsSlidingColor(f"arc crosses edge of dart {c} of the sliding color")
        if m.face_index(c) != faces[-1]:
            raise ArcNotRealizable(f"crossing dart {c} is not on the current face")
        faces.append(m.face_index(m.theta[c]))
    if m.face_index(arc.end) != faces[-1]:
        raise ArcNotRealizable("arc end is not on the final face")
    if faces[0] < 0 or any(f < 0 for f in faces):
        raise ArcNotRealizable("arc runs through a boundary circle")

    k = len(arc.crossings)
    # group visits by edge; their order along each edge is found below
    per_edge: dict[int, list[int]] = {}
    for t, c in enumerate(arc.crossings, start=1):
        per_edge.setdefault(min(c, m.theta[c]), []).append(t)
    _order_arc_points(d, move, faces, per_edge)

    # pushoff side and curve j traversal
    j_seq = list(d.curve(move.curve_j).darts)
    if arc.end in j_seq:
        side = "R"
        arrival = j_seq.index(arc.end)
    else:
        side = "L"
        arrival = j_seq.index(m.theta[arc.end])
    return _ArcPlan(faces, per_edge, side, j_seq, arrival)


def _order_arc_points(d: Diagram, move: SlideMove, faces, per_edge) -> None:
    """Fix the order of the arc's crossing points along each edge, in place.

    An embedded arc induces non-crossing chords inside every face it visits,
    with the two side-appearances of each edge carrying the same points in
    reversed order.  The visit counts are tiny (bounded by the arc), so this
    searches the per-edge orders exhaustively, keeps the first assignment
    whose chords are pairwise non-crossing in every face, and rejects the
    arc when none exists.
    """
    m = d.map
    k = len(move.arc.crossings)
    chords = []
    for t in range(k + 1):
        (pa, da), (pb, db) = _chord_endpoints(d, move, t)
        chords.append((faces[t], (pa, da), (pb, db)))
    multi = sorted(e for e, v in per_edge.items() if len(v) > 1)
    if any(len(per_edge[e]) > 6 for e in multi):
        raise ArcNotRealizable("arc crosses one edge too many times to order")

    face_cycles = {f: list(m.faces()[f]) for f in set(faces)}

    def placements_ok(order_of: dict[int, list[int]]) -> bool:
        # boundary position of each chord endpoint: (index of its dart in the
        # face cycle, offset of the point along that dart)
        def pos(face: int, point: int, dart: int):
            cyc = face_cycles[face]
            base = cyc.index(dart)
            if point == 0 or point == k + 1:
                return (base, 0)
            e = min(dart, m.theta[dart])
            along = order_of[e]
            idx = along.index(point)
            if dart != e:
                idx = len(along) - 1 - idx
            return (base, idx + 1)

        for f in face_cycles:
            here = [ch for ch in chords if ch[0] == f]
            spots = []
            for _, (pa, da), (pb, db) in here:
                spots.append((pos(f, pa, da), pos(f, pb, db)))
            for i in range(len(spots)):
                for j in range(i + 1, len(spots)):
                    a1, a2 = sorted(spots[i])
                    in1 = a1 < spots[j][0] < a2
                    in2 = a1 < spots[j][1] < a2
                    if in1 != in2:
                        return False
        return True

    base_order = {e: list(v) for e, v in per_edge.items()}
    for combo in itertools.product(*(itertools.permutations(per_edge[e]) for e in multi)):
        order_of = dict(base_order)
        for e, perm in zip(multi, combo):
            order_of[e] = list(perm)
        if placements_ok(order_of):
            for e in multi:
                per_edge[e][:] = order_of[e]
            return
    raise ArcNotRealizable("arc cannot be embedded: its chords must cross")


# -- the slide ------------------------------------------------------------------


def slide(d: Diagram, move: SlideMove, check: bool = True) -> Diagram:
    """Slide curve i over curve j along the move's arc.

    Curve i is replaced by the band sum: its name now denotes the unique
    third boundary circle of a neighborhood of (curve i + arc + curve j).
    Curve j and all other curves are unchanged; the surface is unchanged.
    The unchecked variant skips output validation; searches use it and rely
    on certificate replay for soundness.
    """
    plan = _plan_arc(d, move)
    m = d.map
    arc = move.arc
    b = Builder(d)
    color = move.color
    new_name = move.curve_i

    # points along each planned edge: pushoff points hug the curve-j ends
    j_seq = plan.j_seq
    M = len(j_seq)
    side_stub: dict[int, int] = {}
    for r in range(M):
        prev = j_seq[(r - 1) % M]
        if plan.side == "L":
            side_stub[r] = m.sigma[j_seq[r]]
        else:
            side_stub[r] = m.sigma[m.theta[prev]]

    # Per original edge, assemble the subdivision schedule from the tail of
    # the canonical dart: pushoff point at this end, band visit pairs in
    # planned order, pushoff point at the far end.
    schedule: dict[int, list[tuple]] = {}

    def edge_key(dart: int) -> int:
        return min(dart, m.theta[dart])

    for e, visits in plan.per_edge.items():
        items: list[tuple] = []
        for t in visits:
            items.append(("band", t, 0))
            items.append(("band", t, 1))
        schedule[e] = items
    for r in range(M):
        s = side_stub[r]
        e = edge_key(s)
        entry = ("push", r)
        if s == e:
            schedule.setdefault(e, []).insert(0, entry)
        else:
            schedule.setdefault(e, []).append(entry)

    # subdivide and expand
    band_back: dict[tuple[int, int], int] = {}
    band_fwd: dict[tuple[int, int], int] = {}
    push_back: dict[int, int] = {}
    push_fwd: dict[int, int] = {}
    for e in sorted(schedule):
        run = e
        for item in schedule[e]:
            p, q, _far = b.subdivide(run)
            after_p, after_q = b.expand_crossing(p, q, color, new_name)
            # after_p points into the face on e's own phi side
            if item[0] == "band":
                _, t, _half = item
                c = arc.crossings[t - 1]
                if c == e:
                    back, fwd = after_p, after_q
                else:
                    back, fwd = after_q, after_p
                key = (t, item[2])
                band_back[key] = back
                band_fwd[key] = fwd
            else:
                r = item[1]
                s = side_stub[r]
                if (plan.side == "L") == (s == e):
                    fwd, back = after_p, after_q
                else:
                    back, fwd = after_p, after_q
                push_back[r] = back
                push_fwd[r] = fwd
            run = q

    # pushoff ring: join consecutive crossings, leaving the arrival edge open
    for r in range(M):
        nxt = (r + 1) % M
        if r == plan.arrival_index:
            continue
        b.join(push_fwd[r], push_back[nxt])
    e1 = push_fwd[plan.arrival_index]
    e2 = push_back[(plan.arrival_index + 1) % M]

    # band: cut curve i at the start dart and thread the two strands
    u, ubar = b.cut(arc.start)
    pair = (u, ubar)
    for t in range(1, len(arc.crossings) + 1):
        c = arc.crossings[t - 1]
        e = edge_key(c)
        first, second = ((t, 0), (t, 1)) if c == e else ((t, 1), (t, 0))
        b.join(pair[0], band_back[second])
        b.join(pair[1], band_back[first])
        pair = (band_fwd[second], band_fwd[first])
    ends = (e1, e2) if plan.side == "R" else (e2, e1)
    b.join(pair[0], ends[1])
    b.join(pair[1], ends[0])

    # retrace the band-summed curve from a surviving dart of old curve i
    trace_start = d.curve(move.curve_i).darts[0]
    seq = [trace_start]
    cur = trace_start
    while True:
        w = b.theta[cur]
        cur = b.opposite(w)
        if cur == trace_start:
            break
        seq.append(cur)
        if len(seq) > b.next_id:
            raise SurgeryError("band trace did not close")
    b.seq[new_name] = seq
    for dart in seq:
        b.owner[dart] = new_name
        b.owner[b.theta[dart]] = new_name

    return b.freeze(check=check)


# -- bigon reduction -----------------------------------------------------------


def _find_bigon_in_builder(b: Builder) -> Optional[tuple[int, int]]:
    seen = set()
    best = None
    for start in b.sigma:
        if start in seen:
            continue
        face = [start]
        seen.add(start)
        d = b.sigma[b.theta[start]]
        while d != start:
            face.append(d)
            seen.add(d)
            d = b.sigma[b.theta[d]]
        if len(face) != 2:
            continue
        x, y = face
        if b.theta[x] == y or x in b.boundary or y in b.boundary:
            continue
        na, nb = b.owner[x], b.owner[y]
        if na == nb:
            continue
        if len(b.seq[na]) <= 2 or len(b.seq[nb]) <= 2:
            continue  # removal would strand a curve with no crossings
        if set(b.vertex_of(b.theta[x])) == set(b.vertex_of(b.theta[y])):
            continue
        cand = (min(x, y), (x, y))
        if best is None or cand[0] < best[0]:
            best = cand
    return best[1] if best else None


def _remove_bigon(b: Builder, x: int, y: int) -> None:
    """Isotope the two strands apart across the bigon face (x, y)."""
    tx, ty = b.theta[x], b.theta[y]
    a1 = b.opposite(tx)   # A's outgoing stub at the corner vertex of x's head
    a2 = b.opposite(x)    # A's stub at the other corner
    b1 = b.opposite(y)
    b2 = b.opposite(ty)

    def merge(stub1: int, stub2: int, mid_dart: int) -> None:
        name = b.owner[mid_dart]
        far1, far2 = b.theta[stub1], b.theta[stub2]
        b.theta[far1] = far2
        b.theta[far2] = far1
        dead = {stub1, stub2, mid_dart, b.theta[mid_dart]}
        b.seq[name] = [dd for dd in b.seq[name] if dd not in dead]

    merge(a1, a2, x)
    merge(b1, b2, y)
    for dart in (x, tx, y, ty, a1, a2, b1, b2):
        b.remove_from_rotation(dart)
        b.theta.pop(dart, None)
        b.label.pop(dart, None)
        b.owner.pop(dart, None)


def reduce_bigons(d: Diagram, check: bool = True) -> Diagram:
    """Remove empty bigon faces until none remain.

    Each removal cancels two crossings between the same pair of strands, a
    combinatorial isotopy: curves keep their homology classes and the
    surface is untouched.  Bigons whose removal would leave a curve with no
    crossings at all are kept (such a curve could no longer be represented);
    they occur only in degenerate diagrams.
    """
    b = Builder(d)
    changed = False
    while True:
        found = _find_bigon_in_builder(b)
        if found is None:
            return b.freeze(check=check) if changed else d
        _remove_bigon(b, *found)
        changed = True


# -- connected sum and stabilization ---------------------------------------------


def _base_vertex(d: Diagram) -> tuple[int, ...]:
    bases = [v for v in d.map.vertices() if all(d.color_of(x) == SCAFFOLD for x in v)]
    if len(bases) != 1:
        raise MoveError(f"expected a unique scaffold base vertex, found {len(bases)}")
    return bases[0]


def _fresh_name(taken: set[str], name: str) -> str:
    while name in taken:
        name = name + "'"
    return name


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum, plumbed at the scaffold base vertices.

    Genus adds and the curve systems sit side by side.  Scaffold loops of
    the second summand are renamed to extend the first summand's standard
    numbering; colored curves keep their names unless they collide.
    """
    if d1.boundary_count or d2.boundary_count:
        raise BoundaryPresent("connected sum requires closed diagrams")
    m1, m2 = d1.map, d2.map
    off = m1.n
    sigma = list(m1.sigma) + [x + off for x in m2.sigma]
    theta = list(m1.theta) + [x + off for x in m2.theta]
    labels = list(m1.labels) + list(m2.labels)
    ring1 = _base_vertex(d1)
    ring2 = tuple(x + off for x in _base_vertex(d2))
    sigma[ring1[-1]] = ring2[0]
    sigma[ring2[-1]] = ring1[0]
    cmap = CombMap(sigma, theta, [], labels)

    g1 = d1.genus
    b1_holes = 0
    taken = {c.name for c in d1.curves}
    renames: dict[str, str] = {}
    for c in d2.curves:
        if c.color == SCAFFOLD:
            if c.name.startswith("a") and c.name[1:].isdigit():
                new = f"a{int(c.name[1:]) + g1}"
            elif c.name.startswith("b") and c.name[1:].isdigit():
                new = f"b{int(c.name[1:]) + g1}"
            else:
                new = _fresh_name(taken, c.name)
        else:
            new = _fresh_name(taken, c.name)
        renames[c.name] = new
        taken.add(new)
    curves = list(d1.curves)
    for c in d2.curves:
        curves.append(Curve(renames[c.name], c.color, tuple(x + off for x in c.darts)))
    order = {
        color: list(d1.curve_order[color])
        + [renames[nm] for nm in d2.curve_order[color]]
        for color in d1.curve_order
    }
    out = Diagram(cmap, curves, order)
    if d1.genus + d2.genus > 0:
        # genus-0 summands contribute only their equator loop; drop it so the
        # scaffold stays the standard handle system
        for name in [c.name for c in out.curves
                     if c.color == SCAFFOLD and c.name.startswith("o")]:
            out = _drop_scaffold_loop(out, name)
    return out


def _drop_scaffold_loop(d: Diagram, name: str) -> Diagram:
    c = d.curve(name)
    if c.color != SCAFFOLD or len(c.darts) != 1:
        raise MoveError(f"{name} is not an uncrossed scaffold loop")
    dart = c.darts[0]
    m = d.map
    if m.face_index(dart) == m.face_index(m.theta[dart]):
        raise MoveError(f"deleting scaffold loop {name} would break cellularity")
    m2 = m.without_edges([dart])
    old_ids = [x for x in range(m.n) if x not in (dart, m.theta[dart])]
    new_id = {x: i for i, x in enumerate(old_ids)}
    curves = [
        Curve(cc.name, cc.color, tuple(new_id[x] for x in cc.darts))
        for cc in d.curves
        if cc.name != name
    ]
    order = {
        color: tuple(nm for nm in d.curve_order[color] if nm != name)
        for color in d.curve_order
    }
    return Diagram(m2, curves, order, d.certificates)


def stabilize(d: Diagram, i: int) -> Diagram:
    """Connected sum with the i-th standard genus-1 stabilization diagram."""
    return connected_sum(d, dg.stab_diagram(i))


def stabilize_heegaard(d: Diagram) -> Diagram:
    """Connected sum with the genus-1 diagram of the 3-sphere."""
    extra = dg.standard_heegaard(1, 0)
    return connected_sum(d, extra)


# -- restriction and normalized codes ---------------------------------------------


def restricted(d: Diagram, colors: Sequence[str], recolor: Optional[Mapping[str, str]] = None) -> Diagram:
    """Keep the scaffold and the given colors, dropping every other curve."""
    keep = set(colors) | {SCAFFOLD}
    b = Builder(d)
    for c in d.curves:
        if c.color not in keep:
            b.drop_curve(c.name)
    if recolor:
        for name, color in list(b.color.items()):
            if color in recolor:
                b.color[name] = recolor[color]
                for dart in b.seq[name]:
                    b.label[dart] = recolor[color]
                    b.label[b.theta[dart]] = recolor[color]
        new_order = {color: [] for color in b.curve_order}
        for color in b.curve_order:
            for nm in b.curve_order[color]:
                new_order[recolor.get(color, color)].append(nm)
        b.curve_order = new_order
    return b.freeze()


def normalized_map(d: Diagram) -> CombMap:
    """Bigon-reduced map with unused scaffold loops deleted; for comparisons.

    A scaffold loop that no curve crosses is an artifact of how the diagram
    was assembled; deleting it (when its two sides lie on distinct faces)
    yields a smaller cellular scaffold without changing the surface or the
    curves.  The result is only used for isomorphism tests and search
    deduplication, never as a working diagram.
    """
    return _normalize_reduced(reduce_bigons(d))


def _normalize_reduced(d: Diagram) -> CombMap:
    m = d.map
    while True:
        victim = None
        for c in d.curves:
            if c.color != SCAFFOLD or len(c.darts) != 1:
                continue
            dart = c.darts[0]
            if m.face_index(dart) != m.face_index(m.theta[dart]):
                victim = c.name
                break
        if victim is None:
            return m
        dart = d.curve(victim).darts[0]
        m2 = m.without_edges([dart])
        curves = []
        old_ids = [x for x in range(m.n) if x not in (dart, m.theta[dart])]
        new_id = {x: i for i, x in enumerate(old_ids)}
        for c in d.curves:
            if c.name == victim:
                continue
            curves.append(Curve(c.name, c.color, tuple(new_id[x] for x in c.darts)))
        d = Diagram(m2, curves, check=False)
        m = d.map


def normalized_code(d: Diagram) -> bytes:
    return canonical_code(normalized_map(d))


# -- certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Slide sequence standardizing one Heegaard pair, plus the witness.

    ``pair`` names the two colors; moves apply to the pair's subdiagram in
    order (each recorded against the diagram state it acts on, bigon-reduced
    after every move).  ``k`` identifies the standard target and
    ``terminal_iso`` is the dart bijection from the normalized terminal map
    to the normalized standard diagram of that k.
    """

    pair: tuple[str, str]
    moves: tuple[SlideMove, ...]
    k: int
    terminal_iso: tuple[int, ...] = ()


@dataclass(frozen=True)
class CertReport:
    ok: bool
    k: Optional[int] = None
    moves: int = 0
    detail: str = ""


def _pair_subdiagram(d: Diagram, pair: tuple[str, str]) -> Diagram:
    recolor = {pair[0]: ALPHA, pair[1]: BETA}
    if pair == (ALPHA, BETA):
        recolor = None
    return restricted(d, pair, recolor)


@functools.lru_cache(maxsize=None)
def _standard_normalized(g: int, k: int) -> CombMap:
    return normalized_map(dg.standard_heegaard(g, k))


def _scaffold_crossings(d: Diagram, curve: Curve) -> dict[str, int]:
    """Crossing counts of a curve with each scaffold curve, by name."""
    m = d.map
    counts: dict[str, int] = {}
    for i, dart in enumerate(curve.darts):
        nxt = curve.darts[(i + 1) % len(curve.darts)]
        v = m.vertex_darts(nxt)
        if len(v) != 4:
            continue
        other = d.owner_of([x for x in v if x != nxt and x != m.theta[dart]][0])
        if other.color == SCAFFOLD:
            counts[other.name] = counts.get(other.name, 0) + 1
    return counts


def identify_standard_pair(d: Diagram) -> Optional[int]:
    """k if the alpha/beta pair is diffeomorphic to the standard (g, k)
    Heegaard diagram, else None.  Sound but not complete.

    Tries literal colored isomorphism against every standard target first.
    Failing that, it recognizes diagrams that split along the scaffold
    handles: when every curve crosses the scaffold of exactly one handle it
    lives in that handle's punctured torus, where a primitive class
    determines the curve up to isotopy; a handle carrying one curve of each
    color with unimodular classes is a once-crossing standard piece and a
    parallel pair is a disjoint standard piece, so the whole diagram is a
    plumbing of standard genus-1 pieces.
    """
    return _identify(reduce_bigons(d))[0]


def _identify(d: Diagram, normalized: Optional[CombMap] = None):
    """(k, literal witness or None) for an already bigon-reduced pair."""
    from . import invariants as iv

    g = d.genus
    if d.boundary_count:
        return None, None
    if g == 0:
        return (0, ()) if not any(c.color != SCAFFOLD for c in d.curves) else (None, None)
    if not dg.is_cut_system(d, ALPHA).ok or not dg.is_cut_system(d, BETA).ok:
        return None, None
    final = normalized if normalized is not None else normalized_map(d)
    for k in range(g + 1):
        wit = colored_isomorphic(final, _standard_normalized(g, k))
        if wit is not None:
            return k, wit

    # handle-split recognition
    try:
        handle_of: dict[str, int] = {}
        classes: dict[str, tuple[int, ...]] = {}
        for c in d.curves_of(ALPHA) + d.curves_of(BETA):
            hits = _scaffold_crossings(d, c)
            handles = {int(nm[1:]) for nm in hits}
            if len(handles) != 1:
                return None, None
            (h,) = handles
            vec = iv.homology_class(d, c)
            p, q = vec[2 * (h - 1)], vec[2 * (h - 1) + 1]
            if (p, q) == (0, 0) or math.gcd(abs(p), abs(q)) != 1:
                return None, None
            if any(x != 0 for i, x in enumerate(vec) if i // 2 != h - 1):
                return None, None
            handle_of[c.name] = h
            classes[c.name] = (p, q)
    except (DiagramError, KeyError, ValueError):
        return None, None
    k = 0
    for h in range(1, g + 1):
        alphas = [c for c in d.curves_of(ALPHA) if handle_of[c.name] == h]
        betas = [c for c in d.curves_of(BETA) if handle_of[c.name] == h]
        if len(alphas) != 1 or len(betas) != 1:
            return None, None
        (p, q), (r, s) = classes[alphas[0].name], classes[betas[0].name]
        det = abs(p * s - q * r)
        crossings = _pair_crossing_count(d, alphas[0], betas[0])
        if det not in (0, 1) or crossings != det:
            return None, None
        if det == 0:
            k += 1
    # curves of different handles must not cross at all
    for a in d.curves_of(ALPHA):
        for bb in d.curves_of(BETA):
            if handle_of[a.name] != handle_of[bb.name]:
                if _pair_crossing_count(d, a, bb):
                    return None, None
    return k, None


def _pair_crossing_count(d: Diagram, a: Curve, bb: Curve) -> int:
    m = d.map
    b_darts = set(bb.darts) | {m.theta[x] for x in bb.darts}
    n = 0
    for i, dart in enumerate(a.darts):
        nxt = a.darts[(i + 1) % len(a.darts)]
        v = m.vertex_darts(nxt)
        if len(v) == 4 and any(x in b_darts for x in v):
            n += 1
    return n


def verify_certificate(d: Diagram, cert: Certificate) -> CertReport:
    """Replay a certificate's moves and check the terminal standardness.

    The terminal diagram must be honestly diffeomorphic to the standard
    (g, k) Heegaard diagram: by the stored dart bijection when one is
    recorded, else by :func:`identify_standard_pair`.
    """
    try:
        work = _pair_subdiagram(d, cert.pair)
    except DiagramError as e:
        return CertReport(False, detail=f"pair extraction failed: {e}")
    work = reduce_bigons(work)
    for step, mv in enumerate(cert.moves, start=1):
        try:
            work = slide(work, mv)
        except DiagramError as e:
            return CertReport(False, moves=step - 1, detail=str(MoveFailed(step, str(e))))
        work = reduce_bigons(work)
    g = work.genus
    if not (0 <= cert.k <= g):
        return CertReport(False, moves=len(cert.moves), detail="k out of range")
    if cert.terminal_iso:
        final = normalized_map(work)
        target = normalized_map(dg.standard_heegaard(g, cert.k))
        if not _check_iso(final, target, cert.terminal_iso):
            return CertReport(False, moves=len(cert.moves), detail="stored witness invalid")
        return CertReport(True, k=cert.k, moves=len(cert.moves))
    k_found = identify_standard_pair(work)
    if k_found is None:
        return CertReport(
            False,
            moves=len(cert.moves),
            detail=str(TerminalNotStandard(
                f"terminal diagram not recognized as a standard genus-{g} diagram"
            )),
        )
    if k_found != cert.k:
        return CertReport(
            False, moves=len(cert.moves),
            detail=f"terminal diagram is standard with k={k_found}, certificate says {cert.k}",
        )
    return CertReport(True, k=cert.k, moves=len(cert.moves))


def _check_iso(a: CombMap, b: CombMap, wit: Sequence[int]) -> bool:
    if len(wit) != a.n or a.n != b.n:
        return False
    if sorted(wit) != list(range(a.n)):
        return False
    for x in range(a.n):
        if wit[a.sigma[x]] != b.sigma[wit[x]] or wit[a.theta[x]] != b.theta[wit[x]]:
            return False
        if repr(a.labels[x]) != repr(b.labels[wit[x]]):
            return False
    return True


def make_depth0_certificate(d: Diagram, pair: tuple[str, str]) -> Optional[Certificate]:
    """Certificate with no moves, if the pair is already honestly standard."""
    try:
        work = reduce_bigons(_pair_subdiagram(d, pair))
    except DiagramError:
        return None
    g = work.genus
    final = normalized_map(work)
    for k in range(g + 1):
        wit = colored_isomorphic(final, normalized_map(dg.standard_heegaard(g, k)))
        if wit is not None:
            return Certificate(pair, (), k, wit)
    k = identify_standard_pair(work)
    if k is not None:
        return Certificate(pair, (), k)
    return None


# -- augmented diagrams ------------------------------------------------------------


@dataclass(frozen=True)
class AugmentedDiagram:
    """Three per-pair slide sequences with literal terminal isomorphisms.

    The three certificates witness the pairs (alpha,beta), (beta,gamma),
    (gamma,alpha); each sequence steps through cut systems one slide at a
    time and ends in a diagram honestly isomorphic (not just slide
    equivalent) to a standard Heegaard diagram.  The complexity a+b+c counts
    the cut systems appearing, an upper bound for the least possible.
    """

    certificates: tuple[Certificate, Certificate, Certificate]

    @property
    def complexity(self) -> int:
        return sum(len(c.moves) + 1 for c in self.certificates)


@dataclass(frozen=True)
class AugmentedReport:
    ok: bool
    complexity: Optional[int] = None
    params: Optional[dg.TrisectionParams] = None
    detail: str = ""


def verify_augmented(d: Diagram, aug: AugmentedDiagram) -> AugmentedReport:
    """Check an augmented diagram: replay all three certificates and confirm
    the homological trisection conditions at the sampled endpoint states."""
    from . import invariants as iv

    ks = []
    for cert, pair in zip(aug.certificates, TRISECTION_PAIRS):
        if cert.pair != pair:
            return AugmentedReport(False, detail=f"certificate order must be {TRISECTION_PAIRS}")
        rep = verify_certificate(d, cert)
        if not rep.ok:
            return AugmentedReport(False, detail=f"pair {pair}: {rep.detail}")
        ks.append(rep.k)
    for pair in TRISECTION_PAIRS:
        for color in pair:
            if not dg.is_cut_system(d, color).ok:
                return AugmentedReport(False, detail=f"{color} is not a cut system")
        if iv.h1_heegaard(d, pair).torsion:
            return AugmentedReport(False, detail=f"pair {pair} homology has torsion")
    report = dg.validate_trisection(d, dict(zip(TRISECTION_PAIRS, aug.certificates)))
    if report.params is None:
        return AugmentedReport(False, detail="homological check failed")
    return AugmentedReport(True, aug.complexity, report.params)
