"""Combinatorial maps: graphs cellularly embedded in compact oriented surfaces.

A map is encoded by permutations of *darts* (directed edge sides, numbered
``0 .. n-1``):

* ``sigma`` sends each dart to the next dart counterclockwise around the
  vertex it leaves, so vertices are the cycles of ``sigma``;
* ``theta`` is a fixed-point-free involution pairing the two darts of each
  edge, so edges are the 2-cycles of ``theta``;
* faces are the cycles of ``phi = sigma . theta`` (apply ``theta`` first).

Surfaces with boundary are encoded by declaring a set of *boundary darts*:
a ``phi``-cycle consisting of boundary darts is a hole (a boundary circle of
the surface) rather than a disk face.  Euler characteristic counts vertices,
edges and disk faces only, so ``V - E + F = 2 - 2g - b`` on each connected
component with genus ``g`` and ``b`` boundary circles.

Everything here is immutable; operations return new maps.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class MapError(ValueError):
    """Base error for malformed combinatorial maps."""


class NotPermutation(MapError):
    pass


class FixedPointInTheta(MapError):
    pass


class OddDartPairing(MapError):
    pass


class InvalidBoundary(MapError):
    pass


class NotACurveSystem(MapError):
    pass


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycle decomposition, each cycle starting at its minimum, sorted."""
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


class CombMap:
    """An immutable combinatorial map, possibly disconnected or bordered.

    Use :func:`build_map` to construct one with validation.  ``labels`` is an
    optional per-dart tag (equal on the two darts of an edge); diagram-level
    code uses it to store edge colors.
    """

    __slots__ = (
        "sigma",
        "theta",
        "boundary",
        "labels",
        "_sigma_inv",
        "_vertex_of",
        "_face_of",
        "_vertices",
        "_faces",
        "_holes",
        "_components",
    )

    def __init__(
        self,
        sigma: Sequence[int],
        theta: Sequence[int],
        boundary: Iterable[int] = (),
        labels: Optional[Sequence] = None,
    ):
        self.sigma = tuple(sigma)
        self.theta = tuple(theta)
        self.boundary = frozenset(boundary)
        self.labels = None if labels is None else tuple(labels)
        n = len(self.sigma)
        self._sigma_inv = [0] * n
        for d in range(n):
            self._sigma_inv[self.sigma[d]] = d
        self._vertices = _orbits(self.sigma)
        self._vertex_of = [0] * n
        for i, v in enumerate(self._vertices):
            for d in v:
                self._vertex_of[d] = i
        phi = [self.sigma[self.theta[d]] for d in range(n)]
        faces = []
        holes = []
        self._face_of = [0] * n
        for cyc in _orbits(phi):
            inside = sum(1 for d in cyc if d in self.boundary)
            if inside == len(cyc):
                idx = -1 - len(holes)
                holes.append(cyc)
            elif inside == 0:
                idx = len(faces)
                faces.append(cyc)
            else:
                raise InvalidBoundary(
                    f"phi-cycle {cyc} mixes boundary and interior darts"
                )
            for d in cyc:
                self._face_of[d] = idx
        self._faces = faces
        self._holes = holes
        self._components = self._split_components()

    # -- basic counts ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    def vertices(self) -> list[tuple[int, ...]]:
        return list(self._vertices)

    def faces(self) -> list[tuple[int, ...]]:
        """Interior (disk) faces as phi-cycles."""
        return list(self._faces)

    def holes(self) -> list[tuple[int, ...]]:
        """Boundary circles as phi-cycles of boundary darts."""
        return list(self._holes)

    def vertex_index(self, d: int) -> int:
        return self._vertex_of[d]

    def vertex_darts(self, d: int) -> tuple[int, ...]:
        return self._vertices[self._vertex_of[d]]

    def face_index(self, d: int) -> int:
        """Index of the phi-cycle through d; negative indices are holes."""
        return self._face_of[d]

    def face_darts(self, d: int) -> tuple[int, ...]:
        i = self._face_of[d]
        return self._faces[i] if i >= 0 else self._holes[-1 - i]

    def degree(self, d: int) -> int:
        return len(self._vertices[self._vertex_of[d]])

    def sigma_inv(self, d: int) -> int:
        return self._sigma_inv[d]

    def phi(self, d: int) -> int:
        return self.sigma[self.theta[d]]

    def edge_label(self, d: int):
        return None if self.labels is None else self.labels[d]

    # -- topology ----------------------------------------------------------

    def _split_components(self) -> list[tuple[int, ...]]:
        n = len(self.sigma)
        comp = [-1] * n
        comps = []
        for start in range(n):
            if comp[start] >= 0:
                continue
            idx = len(comps)
            stack = [start]
            comp[start] = idx
            acc = []
            while stack:
                d = stack.pop()
                acc.append(d)
                for e in (self.sigma[d], self.theta[d]):
                    if comp[e] < 0:
                        comp[e] = idx
                        stack.append(e)
            comps.append(tuple(sorted(acc)))
        return comps

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted dart tuples."""
        return list(self._components)

    @property
    def is_connected(self) -> bool:
        return len(self._components) <= 1

    def euler_characteristic(self) -> int:
        """V - E + F summed over all components (holes are not faces)."""
        return len(self._vertices) - self.edge_count + len(self._faces)

    def component_summaries(self) -> list[tuple[int, int]]:
        """(genus, boundary_count) per connected component."""
        out = []
        for comp in self._components:
            darts = set(comp)
            v = sum(1 for vv in self._vertices if vv[0] in darts)
            e = len(comp) // 2
            f = sum(1 for ff in self._faces if ff[0] in darts)
            b = sum(1 for hh in self._holes if hh[0] in darts)
            chi = v - e + f
            two_g = 2 - chi - b
            if two_g < 0 or two_g % 2:
                raise MapError(f"component has inconsistent characteristic {chi}")
            out.append((two_g // 2, b))
        return out

    def genus_boundary(self) -> tuple[int, int]:
        if not self.is_connected:
            raise MapError("map is disconnected; use component_summaries()")
        if self.n == 0:
            return (0, 0)
        return self.component_summaries()[0]

    # -- derived maps ------------------------------------------------------

    def relabeled(self, perm: Sequence[int]) -> "CombMap":
        """Conjugate by a dart permutation (perm[d] = new id of d)."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise NotPermutation("relabeling is not a permutation of the darts")
        sigma = [0] * n
        theta = [0] * n
        labels = None if self.labels is None else [None] * n
        for d in range(n):
            sigma[perm[d]] = perm[self.sigma[d]]
            theta[perm[d]] = perm[self.theta[d]]
            if labels is not None:
                labels[perm[d]] = self.labels[d]
        boundary = [perm[d] for d in self.boundary]
        return CombMap(sigma, theta, boundary, labels)

    def without_edges(self, darts: Iterable[int]) -> "CombMap":
        """Delete whole edges (given by any of their darts) and renumber."""
        kill = set()
        for d in darts:
            kill.add(d)
            kill.add(self.theta[d])
        keep = [d for d in range(self.n) if d not in kill]
        new_id = {d: i for i, d in enumerate(keep)}
        sigma = []
        for d in keep:
            e = self.sigma[d]
            while e in kill:
                e = self.sigma[e]
            sigma.append(new_id[e])
        theta = [new_id[self.theta[d]] for d in keep]
        labels = None if self.labels is None else [self.labels[d] for d in keep]
        boundary = [new_id[d] for d in self.boundary if d not in kill]
        return CombMap(sigma, theta, boundary, labels)


def build_map(
    dart_count: int,
    sigma: Sequence[int],
    theta: Sequence[int],
    boundary: Iterable[int] = (),
    labels: Optional[Sequence] = None,
) -> CombMap:
    """Validate and build a :class:`CombMap`.

    ``sigma`` must be a permutation of ``range(dart_count)`` and ``theta`` a
    fixed-point-free involution of it.  ``boundary`` declares the hole-side
    darts; it must be a union of phi-cycles.
    """
    if dart_count % 2:
        raise OddDartPairing(f"dart count {dart_count} is odd; edges have two darts")
    if len(sigma) != dart_count or sorted(sigma) != list(range(dart_count)):
        raise NotPermutation("sigma is not a permutation of the darts")
    if len(theta) != dart_count or sorted(theta) != list(range(dart_count)):
        raise NotPermutation("theta is not a permutation of the darts")
    for d in range(dart_count):
        if theta[d] == d:
            raise FixedPointInTheta(f"theta fixes dart {d}")
        if theta[theta[d]] != d:
            raise OddDartPairing("theta is not an involution")
    boundary = frozenset(boundary)
    for d in boundary:
        if not (0 <= d < dart_count):
            raise InvalidBoundary(f"boundary dart {d} out of range")
    if labels is not None:
        if len(labels) != dart_count:
            raise MapError("labels must cover every dart")
        for d in range(dart_count):
            if labels[d] != labels[theta[d]]:
                raise MapError(f"labels differ on the two darts of edge {d}")
    return CombMap(sigma, theta, boundary, labels)


def genus_and_boundary(m: CombMap) -> tuple[int, int]:
    """Genus and boundary-circle count of a connected map."""
    return m.genus_boundary()


# -- cutting ---------------------------------------------------------------


def cut_along(m: CombMap, edges: Iterable[int]) -> CombMap:
    """Cut the surface open along a system of disjoint simple closed curves.

    ``edges`` lists the cut edges by either dart.  The edges must form a
    2-regular subgraph: every vertex they touch has exactly two incident cut
    darts, so the system is a disjoint union of embedded cycles.  Each cut
    edge is doubled into two boundary edges; the Euler characteristic is
    unchanged and every cut circle contributes two new boundary circles in
    total.  The result may be disconnected.
    """
    cut_edge_min: set[int] = set()
    for d in edges:
        if not (0 <= d < m.n):
            raise NotACurveSystem(f"dart {d} out of range")
        if d in m.boundary or m.theta[d] in m.boundary:
            raise NotACurveSystem(f"edge of dart {d} lies on the boundary")
        cut_edge_min.add(min(d, m.theta[d]))
    cut_darts = set()
    for d in cut_edge_min:
        cut_darts.add(d)
        cut_darts.add(m.theta[d])

    by_vertex: dict[int, list[int]] = {}
    for d in cut_darts:
        by_vertex.setdefault(m.vertex_index(d), []).append(d)
    for v, ds in by_vertex.items():
        if len(ds) != 2:
            raise NotACurveSystem(
                f"vertex {v} carries {len(ds)} cut darts; curves must be simple"
            )

    # Orient each cut circle: walk forward darts, the companion cut dart at
    # each arrival vertex is the next forward dart.
    forward: set[int] = set()
    backward_out: dict[int, int] = {}  # vertex -> backward dart based there
    forward_out: dict[int, int] = {}
    visited = set()
    for start in sorted(cut_darts):
        if start in visited:
            continue
        f = start
        while f not in visited:
            visited.add(f)
            forward.add(f)
            back = m.theta[f]
            visited.add(back)
            v = m.vertex_index(back)
            a, b = by_vertex[v]
            nxt = b if a == back else a
            if nxt == back:
                raise NotACurveSystem("cut darts do not close into cycles")
            forward_out[v] = nxt
            backward_out[v] = back
            f = nxt

    n = m.n
    copy_of = {}  # old cut dart -> its new twin dart
    for d in sorted(cut_darts):
        copy_of[d] = n
        n += 1

    sigma = list(m.sigma) + [0] * len(cut_darts)
    theta = list(m.theta) + [0] * len(cut_darts)
    labels = None if m.labels is None else list(m.labels) + [None] * len(cut_darts)

    for d in sorted(cut_darts):
        theta[copy_of[d]] = copy_of[m.theta[d]]
        if labels is not None:
            labels[copy_of[d]] = m.labels[d]

    # Split the rotation at each cut vertex.  With q the forward dart leaving
    # v and p the backward dart leaving v, the old cycle (q, X.., p, Y..)
    # becomes (q, X.., p) and (copy(q), copy(p), Y..).
    for v, q in forward_out.items():
        p = backward_out[v]
        cyc = list(m._vertices[v])
        i = cyc.index(q)
        cyc = cyc[i:] + cyc[:i]
        j = cyc.index(p)
        xs = cyc[1:j]
        ys = cyc[j + 1 :]
        side1 = [q] + xs + [p]
        side2 = [copy_of[q], copy_of[p]] + ys
        for cycle in (side1, side2):
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                sigma[a] = b

    boundary = set(m.boundary)
    boundary.update(forward)
    boundary.update(copy_of[m.theta[f]] for f in forward)
    return CombMap(sigma, theta, boundary, labels)


# -- canonical codes and isomorphism ---------------------------------------


def _label_table(m: CombMap) -> dict:
    """Map each distinct edge label to a small index, ordered by repr.

    Isomorphic maps carry the same label multiset, hence the same table; the
    table itself is embedded in the canonical code so maps with different
    label sets never collide.
    """
    if m.labels is None:
        return {}
    distinct = sorted({repr(l) for l in m.labels})
    by_repr = {r: i for i, r in enumerate(distinct)}
    return {l: by_repr[repr(l)] for l in set(m.labels)}


def _root_stream(
    m: CombMap, root: int, best: Optional[list[int]], lab_idx: dict
) -> Optional[list[int]]:
    """BFS code stream from one root; None once it exceeds ``best``.

    The stream emits, for each dart in discovery order, the discovery labels
    of its sigma- and theta-images plus its label index and boundary flag.
    Equal streams from two maps induce a color- and orientation-preserving
    isomorphism.
    """
    lab = {root: 0}
    order = [root]
    stream: list[int] = []
    i = 0
    for d in order:
        for img in (m.sigma[d], m.theta[d]):
            if img not in lab:
                lab[img] = len(order)
                order.append(img)
            stream.append(lab[img])
        stream.append(lab_idx[m.labels[d]] if m.labels is not None else 0)
        stream.append(1 if d in m.boundary else 0)
        if best is not None:
            while i < len(stream):
                if stream[i] > best[i]:
                    return None
                if stream[i] < best[i]:
                    best = None
                    break
                i += 1
    return stream


def _root_class(m: CombMap) -> list[int]:
    """Isomorphism-invariant set of start darts: the least label class.

    Restricting the minimum to one label class is safe because any colored
    isomorphism preserves labels, and it cuts the quadratic cost of the
    canonical search by the number of classes.
    """
    if m.labels is None:
        return list(range(m.n))
    least = min(map(repr, m.labels))
    return [d for d in range(m.n) if repr(m.labels[d]) == least]


def _component_code(m: CombMap, roots: Iterable[int], lab_idx: dict) -> tuple[list[int], int]:
    best: Optional[list[int]] = None
    best_root = -1
    for r in roots:
        s = _root_stream(m, r, best, lab_idx)
        if s is not None and (best is None or s < best):
            best = s
            best_root = r
    assert best is not None
    return best, best_root


def _submap(m: CombMap, darts: Sequence[int]) -> CombMap:
    new_id = {d: i for i, d in enumerate(darts)}
    sigma = [new_id[m.sigma[d]] for d in darts]
    theta = [new_id[m.theta[d]] for d in darts]
    labels = None if m.labels is None else [m.labels[d] for d in darts]
    boundary = [new_id[d] for d in darts if d in m.boundary]
    return CombMap(sigma, theta, boundary, labels)


def canonical_code(m: CombMap) -> bytes:
    """Canonical byte code: equal codes iff the labeled maps are isomorphic.

    Computed as the lexicographic minimum over all start darts of a BFS
    relabeling stream, per connected component; component codes are sorted
    and joined, so the code is invariant under any dart relabeling.
    """
    if m.n == 0:
        return b"emptymap"
    lab_idx = _label_table(m)
    header = ";".join(sorted({repr(l) for l in m.labels})) if m.labels else ""
    parts = []
    for comp in m.components():
        sub = _submap(m, comp)
        stream, _ = _component_code(sub, _root_class(sub), lab_idx)
        parts.append(",".join(map(str, stream)))
    parts.sort()
    return (header + "#" + "|".join(parts)).encode("utf-8")


def _bfs_labeling(m: CombMap, root: int) -> dict[int, int]:
    lab = {root: 0}
    order = [root]
    for d in order:
        for img in (m.sigma[d], m.theta[d]):
            if img not in lab:
                lab[img] = len(order)
                order.append(img)
    return lab


def colored_isomorphic(a: CombMap, b: CombMap) -> Optional[tuple[int, ...]]:
    """A color/boundary-respecting orientation-preserving isomorphism, or None.

    Returns the dart bijection as a tuple ``t`` with ``t[dart of a] = dart
    of b``.  Decided via canonical codes; the witness is reconstructed from
    the minimizing BFS labelings.
    """
    if a.n != b.n:
        return None
    if (a.labels is None) != (b.labels is None):
        return None
    if a.labels is not None and sorted(map(repr, a.labels)) != sorted(map(repr, b.labels)):
        return None
    if a.n == 0:
        return ()
    comps_a = [(_submap(a, c), c) for c in a.components()]
    comps_b = [(_submap(b, c), c) for c in b.components()]
    if len(comps_a) != len(comps_b):
        return None
    lab_a, lab_b = _label_table(a), _label_table(b)

    def keyed(comps, lab_idx):
        out = []
        for sub, darts in comps:
            stream, root = _component_code(sub, _root_class(sub), lab_idx)
            out.append((",".join(map(str, stream)), sub, darts, root))
        out.sort(key=lambda t: (t[0], t[2]))
        return out

    ka, kb = keyed(comps_a, lab_a), keyed(comps_b, lab_b)
    mapping = [0] * a.n
    for (ca, sa, da, ra), (cb, sb, db, rb) in zip(ka, kb):
        if ca != cb or len(da) != len(db):
            return None
        la = _bfs_labeling(sa, ra)
        lb = _bfs_labeling(sb, rb)
        inv_lb = {v: k for k, v in lb.items()}
        for local, glob in enumerate(da):
            mapping[glob] = db[inv_lb[la[local]]]
    result = tuple(mapping)
    for d in range(a.n):
        if result[a.sigma[d]] != b.sigma[result[d]]:
            return None
        if result[a.theta[d]] != b.theta[result[d]]:
            return None
    return result
