"""Bounded breadth-first search for standardization certificates.

States are bigon-reduced Heegaard pair diagrams, deduplicated by the
canonical code of their normalized maps; moves are handle slides on either
color with arcs crossing at most a configured number of edges.  The search
returns the first certificate found (every returned certificate verifies) or
an explicit Exhausted outcome with the depth reached and node count, so a
failed search is an honest budget statement rather than a nonexistence
claim.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import moves as mv
from .combmap import canonical_code
from .diagram import ALPHA, BETA, Diagram, DiagramError, TRISECTION_PAIRS


class SearchError(DiagramError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 4
    max_arc_crossings: int = 4
    node_budget: int = 2000
    deterministic_order: bool = True

    def __post_init__(self):
        if self.max_depth < 0:
            raise SearchError(f"max_depth {self.max_depth} must be >= 0")
        if self.max_arc_crossings < 0:
            raise SearchError(f"max_arc_crossings {self.max_arc_crossings} must be >= 0")
        if self.node_budget <= 0:
            raise SearchError(f"node_budget {self.node_budget} must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    certificate: Optional[mv.Certificate]
    depth_reached: int = 0
    nodes_expanded: int = 0
    budget_exceeded: bool = False

    @property
    def found(self) -> bool:
        return self.certificate is not None

    def __str__(self) -> str:
        if self.found:
            return (
                f"certificate of {len(self.certificate.moves)} moves, "
                f"k={self.certificate.k} ({self.nodes_expanded} nodes)"
            )
        tail = ", budget exceeded" if self.budget_exceeded else ""
        return f"Exhausted depth={self.depth_reached} nodes={self.nodes_expanded}{tail}"


def _candidate_slides(d: Diagram, color: str, max_arc_crossings: int, validate: bool) -> list[mv.SlideMove]:
    m = d.map
    curves = d.curves_of(color)
    if len(curves) < 2:
        return []
    face_lists = {i: f for i, f in enumerate(m.faces())}
    out: list[mv.SlideMove] = []
    for ci in curves:
        for cj in curves:
            if ci.name == cj.name:
                continue
            cj_darts = set(cj.darts) | {m.theta[x] for x in cj.darts}
            starts = sorted(set(ci.darts) | {m.theta[x] for x in ci.darts})
            for u in starts:
                frontier: list[tuple[int, tuple[int, ...]]] = [(m.face_index(u), ())]
                while frontier:
                    nxt: list[tuple[int, tuple[int, ...]]] = []
                    for f, crossings in frontier:
                        if f < 0:
                            continue
                        face = face_lists[f]
                        for w in face:
                            if w in cj_darts:
                                arc = mv.SlideArc(u, crossings, w)
                                move = mv.SlideMove(color, ci.name, cj.name, arc)
                                if validate:
                                    try:
                                        mv._plan_arc(d, move)
                                    except DiagramError:
                                        continue
                                out.append(move)
                        if len(crossings) < max_arc_crossings:
                            for c in face:
                                if m.labels[c] != color:
                                    nxt.append((m.face_index(m.theta[c]), crossings + (c,)))
                    frontier = nxt
    order = {c.name: i for i, c in enumerate(curves)}
    out.sort(
        key=lambda s: (
            order[s.curve_i],
            order[s.curve_j],
            s.arc.start,
            len(s.arc.crossings),
            s.arc.crossings,
            s.arc.end,
        )
    )
    return out


def enumerate_slides(d: Diagram, color: str, max_arc_crossings: int) -> list[mv.SlideMove]:
    """All valid slides within one color whose arcs cross few enough edges.

    Deterministic order: by the sliding and target curve's position in the
    color's curve order, then by the arc's start dart, length, crossing
    darts, and end dart.  Arcs that cannot be embedded are dropped.
    """
    return _candidate_slides(d, color, max_arc_crossings, validate=True)


def _terminal_certificate(
    work: Diagram, pair: tuple[str, str], path: tuple[mv.SlideMove, ...], normalized=None
) -> Optional[mv.Certificate]:
    k, wit = mv._identify(work, normalized)
    if k is None:
        return None
    return mv.Certificate(pair, path, k, wit if wit is not None else ())


def _bfs_round(
    start: Diagram,
    pair: tuple[str, str],
    arc_cap: int,
    depth_cap: int,
    budget: int,
) -> tuple[Optional[mv.Certificate], int, int, bool]:
    seen = {canonical_code(mv.normalized_map(start))}
    queue = deque([(start, (), 0)])
    nodes = 0
    depth_reached = 0
    while queue:
        state, path, depth = queue.popleft()
        if depth >= depth_cap:
            continue
        slides = _candidate_slides(state, ALPHA, arc_cap, validate=False) + _candidate_slides(
            state, BETA, arc_cap, validate=False
        )
        for move in slides:
            if nodes >= budget:
                return None, depth_reached, nodes, True
            nodes += 1
            try:
                child = mv.reduce_bigons(mv.slide(state, move, check=False), check=False)
            except DiagramError:
                continue
            normalized = mv._normalize_reduced(child)
            code = canonical_code(normalized)
            if code in seen:
                continue
            seen.add(code)
            depth_reached = max(depth_reached, depth + 1)
            child_path = path + (move,)
            cert = _terminal_certificate(child, pair, child_path, normalized)
            if cert is not None:
                return cert, depth + 1, nodes, False
            queue.append((child, child_path, depth + 1))
    return None, depth_reached, nodes, False


def standardize(d: Diagram, pair: tuple[str, str], cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Search for a slide sequence making one Heegaard pair standard.

    Iterative deepening over rounds that raise the arc bound and depth cap
    together, each round a breadth-first search with states bigon-reduced
    and deduplicated by canonical code.  Short certificates with short arcs
    are found cheaply; raising either budget only extends the schedule, so a
    previously found certificate is never lost.  Identical inputs give
    identical outcomes, including node counts.
    """
    try:
        start = mv.reduce_bigons(mv._pair_subdiagram(d, pair))
    except DiagramError as e:
        raise SearchError(f"cannot extract pair {pair}: {e}")
    cert = _terminal_certificate(start, pair, (), mv._normalize_reduced(start))
    if cert is not None:
        return SearchOutcome(cert, 0, 0)
    total_nodes = 0
    depth_reached = 0
    exceeded = False
    # Arc length drives the branching factor, so deepen fully at each arc
    # bound before widening; raising either budget only refines later rounds.
    for arc_cap in range(1, cfg.max_arc_crossings + 1):
        if cfg.max_depth == 0:
            break
        budget_left = cfg.node_budget - total_nodes
        if budget_left <= 0:
            exceeded = True
            break
        cert, dr, nodes, over = _bfs_round(start, pair, arc_cap, cfg.max_depth, budget_left)
        total_nodes += nodes
        depth_reached = max(depth_reached, dr)
        exceeded = exceeded or over
        if cert is not None:
            return SearchOutcome(cert, dr, total_nodes)
    return SearchOutcome(None, depth_reached, total_nodes, budget_exceeded=exceeded)


@dataclass(frozen=True)
class Triple:
    outcomes: tuple[SearchOutcome, SearchOutcome, SearchOutcome]
    augmented: Optional[mv.AugmentedDiagram] = None
    report: Optional[mv.AugmentedReport] = None


def standardize_all(d: Diagram, cfg: SearchConfig = SearchConfig()) -> Triple:
    """Standardize all three pairs; assemble an augmented diagram on success.

    Partial results are returned as-is: any pair the search exhausts leaves
    the augmented diagram unset.
    """
    outcomes = tuple(standardize(d, pair, cfg) for pair in TRISECTION_PAIRS)
    if all(o.found for o in outcomes):
        aug = mv.AugmentedDiagram(tuple(o.certificate for o in outcomes))
        report = mv.verify_augmented(d, aug)
        return Triple(outcomes, aug, report)
    return Triple(outcomes)
