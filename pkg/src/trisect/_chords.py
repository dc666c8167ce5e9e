"""Compile polygon chord words into diagrams.

A diagram is authored as curves crossing the scaffold: the surface is the
standard polygon (sides ``a1 b1 a1 b1 a2 ...`` identified in pairs, plus
unidentified sides for boundary circles) and each curve is a cyclic word of
transits ``a1[2]``, ``-b3[1]``: the scaffold edge crossed, the strand's
position along that edge, and the crossing direction (``-`` reverses it).

Compilation places the strand endpoints on a convex arc in transit order,
realizes the in-polygon chords as straight segments, turns interleaved
chords of different colors into transverse crossings (same-color
interleavings are rejected), and emits the full combinatorial map with
exact, deterministic crossing order computed in rational arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from .combmap import CombMap
from .diagram import ALL_COLORS, SCAFFOLD, Curve, Diagram, DiagramError


class ChordError(DiagramError):
    """Base error for chord-word compilation."""


class SameColorChordsCross(ChordError):
    pass


class IndexGap(ChordError):
    pass


class UnmatchedEdgeCount(ChordError):
    pass


@dataclass(frozen=True)
class Transit:
    sign: int
    edge: str
    index: int


@dataclass(frozen=True)
class ChordCurveSpec:
    color: str
    name: str
    word: tuple[Transit, ...]


@dataclass(frozen=True)
class ChordSpec:
    genus: int
    boundary: int
    curves: tuple[ChordCurveSpec, ...]


_TOKEN = re.compile(r"^(-?)([A-Za-z]+\d*)\[(\d+)\]$")


def parse_word_tokens(text: str) -> list[Transit]:
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ChordError(f"bad transit token {tok!r}")
        out.append(Transit(-1 if m.group(1) else 1, m.group(2), int(m.group(3))))
    return out


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _ccw_sorted(stubs: list[tuple[int, tuple[Fraction, Fraction]]]) -> list[int]:
    """Sort (dart, direction) pairs counterclockwise by exact comparisons."""

    def cmp_key(item):
        x, y = item[1]
        half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
        return half

    halves: dict[int, list] = {0: [], 1: []}
    for it in stubs:
        halves[cmp_key(it)].append(it)

    def sort_half(items):
        # within one half-plane, ccw order = decreasing x/r, done via cross product
        out = list(items)
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                (_, vi), (_, vj) = out[i], out[j]
                if _cross(vi[0], vi[1], vj[0], vj[1]) < 0:
                    out[i], out[j] = out[j], out[i]
        return out

    ordered = sort_half(halves[0]) + sort_half(halves[1])
    return [d for d, _ in ordered]


def compile_chords(spec: ChordSpec) -> Diagram:
    g, b = spec.genus, spec.boundary
    if g < 0 or b < 0:
        raise ChordError("genus and boundary count must be >= 0")
    from .diagram import scaffold_diagram

    if g == 0:
        if spec.curves:
            raise UnmatchedEdgeCount("genus 0 has no crossable scaffold edges")
        return scaffold_diagram(0, b)

    handle_edges = [f"{ab}{i + 1}" for i in range(g) for ab in ("a", "b")]
    crossable = set(handle_edges)

    for c in spec.curves:
        if c.color not in ALL_COLORS or c.color == SCAFFOLD:
            raise ChordError(f"curve {c.name} has invalid color {c.color!r}")
        if not c.word:
            raise ChordError(f"curve {c.name} crosses nothing; not representable")
        for t in c.word:
            if t.edge not in crossable:
                raise UnmatchedEdgeCount(
                    f"curve {c.name} crosses unknown edge {t.edge!r} on genus {g}"
                )

    # strand slots per scaffold edge must be exactly 1..n_e
    slots: dict[str, list[tuple]] = {e: [] for e in handle_edges}
    for ci, c in enumerate(spec.curves):
        for wi, t in enumerate(c.word):
            slots[t.edge].append((t.index, ci, wi))
    n_of: dict[str, int] = {}
    for e, ss in slots.items():
        idxs = sorted(i for i, _, _ in ss)
        n_of[e] = len(idxs)
        if idxs != list(range(1, len(idxs) + 1)):
            raise IndexGap(f"indices on edge {e} are {idxs}, expected 1..{len(idxs)}")

    # ---- polygon boundary layout -----------------------------------------
    # Bare scaffold darts: handle i has forward darts 4i (a), 4i+1 (b) and
    # backward partners 4i+2, 4i+3; boundary loops follow.  The interior
    # face walk gives the polygon sides, interior to the right of the walk.
    nb = 4 * g + 2 * b
    ring = list(range(nb))
    sigma0 = [0] * nb
    for x, y in zip(ring, ring[1:] + ring[:1]):
        sigma0[x] = y
    theta0 = [0] * nb
    for i in range(g):
        theta0[4 * i], theta0[4 * i + 2] = 4 * i + 2, 4 * i
        theta0[4 * i + 1], theta0[4 * i + 3] = 4 * i + 3, 4 * i + 1
    for j in range(b):
        x = 4 * g + 2 * j
        theta0[x], theta0[x + 1] = x + 1, x
    hole0 = {4 * g + 2 * j + 1 for j in range(b)}
    walk = [0]
    while True:
        nxt = sigma0[theta0[walk[-1]]]
        if nxt == walk[0]:
            break
        walk.append(nxt)
    if sorted(walk) != sorted(set(range(nb)) - hole0):
        raise ChordError("scaffold polygon is not a single face")
    # The phi-orbit has the face on the right of each dart; reverse it so the
    # boundary is traversed counterclockwise (interior on the left), giving
    # the standard polygon reading a1 b1 a1' b1' ...
    walk.reverse()

    def edge_name(dart: int) -> str:
        if dart >= 4 * g:
            return f"c{(dart - 4 * g) // 2 + 1}"
        i, r = divmod(dart, 4)
        return f"a{i + 1}" if r in (0, 2) else f"b{i + 1}"

    def is_forward(dart: int) -> bool:
        return dart < 4 * g and dart % 4 in (0, 1)

    # Point keys ("f"|"k", edge, index); "f" lies on the forward side copy.
    # The ccw walk traverses each side against its dart's own direction, so
    # points keyed by the dart's index run backward on forward-dart sides.
    u_of: dict[tuple, int] = {}
    u = 0
    for dart in walk:
        e = edge_name(dart)
        if dart >= 4 * g:
            continue
        rng = range(n_of[e], 0, -1) if is_forward(dart) else range(1, n_of[e] + 1)
        side = "f" if is_forward(dart) else "k"
        for idx in rng:
            u_of[(side, e, idx)] = u
            u += 1

    def coords(key) -> tuple[Fraction, Fraction]:
        uu = u_of[key]
        return (Fraction(uu), Fraction(uu * uu))

    # ---- chords ------------------------------------------------------------
    # A positive transit crosses its scaffold edge in the direction that adds
    # +1 to the curve's dual coordinate: entering through the forward side
    # copy on a-edges and through the backward copy on b-edges; a minus sign
    # swaps the sides.  Chord j of a curve joins the exit of word transit j
    # to the entry of transit j+1.
    def transit_sides(t: Transit) -> tuple[str, str]:
        positive_entry = "f" if t.edge.startswith("a") else "k"
        entry = positive_entry if t.sign > 0 else ("k" if positive_entry == "f" else "f")
        return entry, ("k" if entry == "f" else "f")

    chords = []  # (curve_idx, word_idx, start_key, end_key)
    for ci, c in enumerate(spec.curves):
        m = len(c.word)
        for j in range(m):
            t, t2 = c.word[j], c.word[(j + 1) % m]
            _, exit_side = transit_sides(t)
            entry_side, _ = transit_sides(t2)
            exit_key = (exit_side, t.edge, t.index)
            entry_key = (entry_side, t2.edge, t2.index)
            chords.append((ci, j, exit_key, entry_key))

    def span(ch):
        a, bnd = u_of[ch[2]], u_of[ch[3]]
        return (min(a, bnd), max(a, bnd))

    crossings: dict[int, list[tuple[Fraction, int]]] = {i: [] for i in range(len(chords))}
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            (lo1, hi1), (lo2, hi2) = span(chords[i]), span(chords[j])
            if (lo1 < lo2 < hi1 < hi2) or (lo2 < lo1 < hi2 < hi1):
                ca, cb = spec.curves[chords[i][0]], spec.curves[chords[j][0]]
                if ca.color == cb.color:
                    raise SameColorChordsCross(
                        f"curves {ca.name} and {cb.name} share color {ca.color}"
                    )
                p, q = coords(chords[i][2]), coords(chords[i][3])
                r, s = coords(chords[j][2]), coords(chords[j][3])
                dq = (q[0] - p[0], q[1] - p[1])
                ds = (s[0] - r[0], s[1] - r[1])
                denom = _cross(dq[0], dq[1], ds[0], ds[1])
                ti = _cross(r[0] - p[0], r[1] - p[1], ds[0], ds[1]) / denom
                tj = _cross(r[0] - p[0], r[1] - p[1], dq[0], dq[1]) / denom
                crossings[i].append((ti, j))
                crossings[j].append((tj, i))
    for i in crossings:
        crossings[i].sort()

    # ---- pieces and darts ---------------------------------------------------
    pieces: list[tuple] = []  # (tail_vertex_key, head_vertex_key, color, kind)

    scaffold_piece_ids: dict[str, list[int]] = {}
    edge_order = handle_edges + [f"c{j + 1}" for j in range(b)]
    for e in edge_order:
        n_e = n_of.get(e, 0)
        ids = []
        stations = [("base",)] + [("T", e, i) for i in range(1, n_e + 1)] + [("base",)]
        for t in range(len(stations) - 1):
            ids.append(len(pieces))
            pieces.append((stations[t], stations[t + 1], SCAFFOLD, ("s", e, t)))
        scaffold_piece_ids[e] = ids

    chord_piece_ids: dict[int, list[int]] = {}
    for cid, ch in enumerate(chords):
        ci = ch[0]
        color = spec.curves[ci].color
        evs = crossings[cid]
        stations = (
            [("P", ch[2])]
            + [("X", min(cid, oth), max(cid, oth)) for _, oth in evs]
            + [("P", ch[3])]
        )
        ids = []
        for t in range(len(stations) - 1):
            ids.append(len(pieces))
            pieces.append((stations[t], stations[t + 1], color, ("c", cid, t)))
        chord_piece_ids[cid] = ids

    n = 2 * len(pieces)
    theta = [0] * n
    labels: list[str] = [""] * n
    for p, (_, _, color, _) in enumerate(pieces):
        theta[2 * p] = 2 * p + 1
        theta[2 * p + 1] = 2 * p
        labels[2 * p] = labels[2 * p + 1] = color

    def tail(p: int) -> int:
        return 2 * p

    def head(p: int) -> int:
        return 2 * p + 1

    # chord stub at a boundary point: first-piece tail if the chord starts
    # there, last-piece head if it ends there
    point_stub: dict[tuple, int] = {}
    for cid, ch in enumerate(chords):
        ids = chord_piece_ids[cid]
        if ("P", ch[2]) in point_stub or ("P", ch[3]) in point_stub:
            raise ChordError("strand slot used twice")
        point_stub[("P", ch[2])] = tail(ids[0])
        point_stub[("P", ch[3])] = head(ids[-1])

    rotations: list[list[int]] = []

    base_ring: list[int] = []
    for i in range(g):
        for ab in ("a", "b"):
            base_ring.append(tail(scaffold_piece_ids[f"{ab}{i + 1}"][0]))
        for ab in ("a", "b"):
            base_ring.append(head(scaffold_piece_ids[f"{ab}{i + 1}"][-1]))
    hole_darts = []
    for j in range(b):
        ids = scaffold_piece_ids[f"c{j + 1}"]
        base_ring.append(tail(ids[0]))
        base_ring.append(head(ids[0]))
        hole_darts.append(head(ids[0]))
    rotations.append(base_ring)

    for e in handle_edges:
        ids = scaffold_piece_ids[e]
        for i in range(1, n_of[e] + 1):
            s_out = tail(ids[i])
            s_back = head(ids[i - 1])
            g_fwd = point_stub[("P", ("f", e, i))]
            g_back = point_stub[("P", ("k", e, i))]
            rotations.append([s_out, g_back, s_back, g_fwd])

    seen_x = set()
    for cid in range(len(chords)):
        p0, p1 = coords(chords[cid][2]), coords(chords[cid][3])
        v = (p1[0] - p0[0], p1[1] - p0[1])
        for k, (_, oth) in enumerate(crossings[cid]):
            key = ("X", min(cid, oth), max(cid, oth))
            if key in seen_x:
                continue
            seen_x.add(key)
            q0, q1 = coords(chords[oth][2]), coords(chords[oth][3])
            w = (q1[0] - q0[0], q1[1] - q0[1])
            kk = [t for t, (_, o2) in enumerate(crossings[oth]) if o2 == cid][0]
            my_ids = chord_piece_ids[cid]
            ot_ids = chord_piece_ids[oth]
            stubs = [
                (tail(my_ids[k + 1]), v),
                (head(my_ids[k]), (-v[0], -v[1])),
                (tail(ot_ids[kk + 1]), w),
                (head(ot_ids[kk]), (-w[0], -w[1])),
            ]
            rotations.append(_ccw_sorted(stubs))

    sigma = [0] * n
    placed = [False] * n
    for rot in rotations:
        for a, bb in zip(rot, rot[1:] + rot[:1]):
            sigma[a] = bb
            placed[a] = True
    if not all(placed):
        raise ChordError("assembly left unattached darts")

    cmap = CombMap(sigma, theta, hole_darts, labels)

    curves: list[Curve] = []
    for i in range(g):
        for ab in ("a", "b"):
            e = f"{ab}{i + 1}"
            curves.append(Curve(e, SCAFFOLD, tuple(tail(p) for p in scaffold_piece_ids[e])))
    for j in range(b):
        curves.append(Curve(f"c{j + 1}", SCAFFOLD, (tail(scaffold_piece_ids[f'c{j + 1}'][0]),)))
    for ci, c in enumerate(spec.curves):
        darts = []
        for cid in range(len(chords)):
            if chords[cid][0] == ci:
                darts.extend(tail(p) for p in chord_piece_ids[cid])
        curves.append(Curve(c.name, c.color, tuple(darts)))

    diagram = Diagram(cmap, curves)
    if diagram.genus != g or diagram.boundary_count != b:
        raise ChordError(
            f"compiled surface is genus {diagram.genus} with {diagram.boundary_count} "
            f"boundary circles, expected ({g}, {b})"
        )
    return diagram
