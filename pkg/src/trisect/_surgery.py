"""Mutable dart-level editor backing the diagram transformations.

The builder holds sigma/theta/label dictionaries plus per-curve dart
sequences, supports local surgeries (subdividing an edge, expanding a
subdivision point into a transverse crossing, cutting and rejoining edges,
deleting crossings), and freezes back to an immutable ``Diagram`` with
densely renumbered darts.  All numbering is deterministic: new darts get
consecutive ids in creation order and freezing sorts surviving ids.
"""

from __future__ import annotations

from typing import Optional

from .combmap import CombMap
from .diagram import ALL_COLORS, Curve, Diagram, DiagramError


class SurgeryError(DiagramError):
    pass


class Builder:
    def __init__(self, d: Diagram):
        m = d.map
        self.sigma = {i: m.sigma[i] for i in range(m.n)}
        self.sigma_inv = {m.sigma[i]: i for i in range(m.n)}
        self.theta: dict[int, Optional[int]] = {i: m.theta[i] for i in range(m.n)}
        self.label = {i: m.labels[i] for i in range(m.n)}
        self.boundary = set(m.boundary)
        self.next_id = m.n
        self.seq: dict[str, list[int]] = {c.name: list(c.darts) for c in d.curves}
        self.color: dict[str, str] = {c.name: c.color for c in d.curves}
        self.owner: dict[int, str] = {}
        for c in d.curves:
            for dart in c.darts:
                self.owner[dart] = c.name
                self.owner[m.theta[dart]] = c.name
        self.curve_order = {k: list(v) for k, v in d.curve_order.items()}

    # -- primitive edits ---------------------------------------------------

    def new_dart(self, label: str, owner: Optional[str]) -> int:
        d = self.next_id
        self.next_id += 1
        self.label[d] = label
        if owner is not None:
            self.owner[d] = owner
        self.theta[d] = None
        return d

    def insert_after(self, anchor: int, dart: int) -> None:
        nxt = self.sigma[anchor]
        self.sigma[anchor] = dart
        self.sigma[dart] = nxt
        self.sigma_inv[nxt] = dart
        self.sigma_inv[dart] = anchor

    def remove_from_rotation(self, dart: int) -> None:
        prev = self.sigma_inv[dart]
        nxt = self.sigma[dart]
        if prev == dart:
            del self.sigma[dart]
            del self.sigma_inv[dart]
            return
        self.sigma[prev] = nxt
        self.sigma_inv[nxt] = prev
        del self.sigma[dart]
        del self.sigma_inv[dart]

    def join(self, a: int, b: int) -> None:
        if self.theta.get(a) is not None or self.theta.get(b) is not None:
            raise SurgeryError("joining darts that are already paired")
        self.theta[a] = b
        self.theta[b] = a

    def cut(self, dart: int) -> tuple[int, int]:
        """Unpair an edge; both darts become dangling and are returned."""
        other = self.theta[dart]
        self.theta[dart] = None
        self.theta[other] = None
        return dart, other

    def delete_dart(self, dart: int) -> None:
        self.remove_from_rotation(dart)
        del self.theta[dart]
        del self.label[dart]
        self.owner.pop(dart, None)
        self.boundary.discard(dart)

    def subdivide(self, dart: int) -> tuple[int, int, int]:
        """Split edge(dart) at a new bivalent vertex.

        Returns (mid_back, mid_fwd, far): ``mid_back`` pairs with ``dart``,
        ``mid_fwd`` with the old partner ``far``.  The owning curve's
        sequence gains the new out-dart on the appropriate side.
        """
        far = self.theta[dart]
        name = self.owner.get(dart)
        lbl = self.label[dart]
        p = self.new_dart(lbl, name)
        q = self.new_dart(lbl, name)
        self.theta[dart] = p
        self.theta[p] = dart
        self.theta[q] = far
        self.theta[far] = q
        self.sigma[p] = q
        self.sigma[q] = p
        self.sigma_inv[p] = q
        self.sigma_inv[q] = p
        if name is not None:
            s = self.seq[name]
            if dart in s:
                s.insert(s.index(dart) + 1, q)
            else:
                s.insert(s.index(far) + 1, p)
        return p, q, far

    def expand_crossing(self, p: int, q: int, label: str, owner: Optional[str]) -> tuple[int, int]:
        """Turn the bivalent vertex (p, q) into a transverse crossing.

        Returns (after_p, after_q): the two new strand stubs, inserted so the
        rotation reads (p, after_p, q, after_q).  ``after_p`` points into the
        face on the phi-side of the piece ending at p.
        """
        np_ = self.new_dart(label, owner)
        nq = self.new_dart(label, owner)
        self.insert_after(p, np_)
        self.insert_after(q, nq)
        return np_, nq

    # -- queries -------------------------------------------------------------

    def vertex_of(self, dart: int) -> list[int]:
        out = [dart]
        d = self.sigma[dart]
        while d != dart:
            out.append(d)
            d = self.sigma[d]
        return out

    def opposite(self, dart: int) -> int:
        v = self.vertex_of(dart)
        if len(v) != 4:
            raise SurgeryError(f"dart {dart} not at a 4-valent vertex")
        return self.sigma[self.sigma[dart]]

    # -- freeze ----------------------------------------------------------------

    def freeze(self, curve_order=None, check: bool = True) -> Diagram:
        alive = sorted(self.sigma)
        new_id = {d: i for i, d in enumerate(alive)}
        n = len(alive)
        sigma = [0] * n
        theta = [0] * n
        labels = [None] * n
        for d in alive:
            if self.theta[d] is None:
                raise SurgeryError(f"dart {d} left dangling")
            sigma[new_id[d]] = new_id[self.sigma[d]]
            theta[new_id[d]] = new_id[self.theta[d]]
            labels[new_id[d]] = self.label[d]
        boundary = [new_id[d] for d in self.boundary]
        cmap = CombMap(sigma, theta, boundary, labels)
        curves = []
        names = []
        for color in ALL_COLORS:
            for name in self.curve_order.get(color, []):
                if name in self.seq:
                    names.append(name)
        for name in names:
            darts = tuple(new_id[d] for d in self.seq[name])
            curves.append(Curve(name, self.color[name], darts))
        order = curve_order or {
            color: [nm for nm in self.curve_order.get(color, []) if nm in self.seq]
            for color in ALL_COLORS
        }
        return Diagram(cmap, curves, order, check=check)

    # -- composite operations ---------------------------------------------------

    def drop_curve(self, name: str) -> None:
        """Delete a colored curve, merging the strands it crossed.

        Raises if some crossing strand would be left with no vertex at all:
        such a strand is no longer representable as a map curve.
        """
        darts = self.seq[name]
        ports: dict[int, int] = {}  # other-strand stub -> its opposite stub
        for i, d in enumerate(darts):
            nxt = darts[(i + 1) % len(darts)]
            v = self.vertex_of(nxt)
            if len(v) != 4:
                raise SurgeryError("curve passes a non-crossing vertex")
            others = [x for x in v if x != nxt and x != self.theta[d]]
            if self.owner[others[0]] == name or self.owner[others[0]] != self.owner[others[1]]:
                raise SurgeryError("tangled crossing while deleting a curve")
            ports[others[0]] = others[1]
            ports[others[1]] = others[0]

        # Merge strand runs through the deleted crossings end to end.
        joins: list[tuple[int, int]] = []
        consumed = set()
        for s in sorted(ports):
            if s in consumed:
                continue
            f = self.theta[s]
            if f in ports:
                continue  # interior port; its chain is walked from an end
            consumed.add(s)
            cur = ports[s]
            consumed.add(cur)
            g = self.theta[cur]
            while g in ports:
                consumed.add(g)
                cur = ports[g]
                consumed.add(cur)
                g = self.theta[cur]
            joins.append((f, g))
        leftover = [s for s in ports if s not in consumed]
        if leftover:
            # a strand crossing only the deleted curve closes up on itself
            raise SurgeryError(
                f"curve {self.owner[leftover[0]]} would be left with no crossings"
            )

        kill = set()
        for d in darts:
            kill.add(d)
            kill.add(self.theta[d])
        kill.update(ports)
        dead_names = {name}
        for f, g in joins:
            self.theta[f] = g
            self.theta[g] = f
        for strand_name in {self.owner[s] for s in ports}:
            self.seq[strand_name] = [d for d in self.seq[strand_name] if d not in kill]
        for d in sorted(kill):
            if d in self.sigma:
                self.remove_from_rotation(d)
            self.theta.pop(d, None)
            self.label.pop(d, None)
            self.owner.pop(d, None)
        for nm in dead_names:
            del self.seq[nm]
            del self.color[nm]
            for color in self.curve_order:
                if nm in self.curve_order[color]:
                    self.curve_order[color].remove(nm)
