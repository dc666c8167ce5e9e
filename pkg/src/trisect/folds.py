"""Fold patterns: combinatorics of trisecting functions over the plane.

A fold pattern records, for each of the three sectors between the rays at
angles 0, -2pi/3 and -4pi/3, the arcs of the singular locus running from one
bounding ray to the next: their kind (definite or indefinite), cusp count,
and the slot (1 = innermost) where each endpoint meets the ray.  Double
points of the singular image are kept only as a count; no planar coordinates
are stored.

The standard pattern for parameters (g; k1, k2, k3) has g+1 arcs per sector:
k_i cuspless indefinite folds, g - k_i indefinite folds with one cusp each,
and one definite fold outermost, so each ray meets g index-2 points and a
single outermost index-3 point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ParamOutOfRange, TrisectionParams

DEFINITE = "definite"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class FoldArc:
    kind: str
    cusps: int
    start_slot: int
    end_slot: int


@dataclass(frozen=True)
class FoldPattern:
    sectors: tuple[tuple[FoldArc, ...], tuple[FoldArc, ...], tuple[FoldArc, ...]]
    double_points: int = 0

    def ray_census(self, ray: int) -> tuple[int, ...]:
        """Morse indices met along a bounding ray, from the outside in.

        Slot g+1 carries the definite fold (index 3 seen from outside), the
        rest are indefinite (index 2).
        """
        sector = self.sectors[ray % 3]
        slots = sorted((a.start_slot for a in sector), reverse=True)
        top = max(slots) if slots else 0
        return tuple(3 if s == top else 2 for s in slots)


@dataclass(frozen=True)
class FoldReport:
    valid: bool
    violations: tuple[str, ...]
    params: TrisectionParams | None = None


def standard_fold_pattern(g: int, k1: int, k2: int, k3: int) -> FoldPattern:
    """The standard singular pattern of a (g; k1, k2, k3) trisecting function."""
    if g < 0:
        raise ParamOutOfRange(f"genus {g} < 0")
    for k in (k1, k2, k3):
        if not 0 <= k <= g:
            raise ParamOutOfRange(f"k = {k} outside [0, {g}]")
    sectors = []
    for k in (k1, k2, k3):
        arcs = [FoldArc(INDEFINITE, 0, s, s) for s in range(1, k + 1)]
        arcs += [FoldArc(INDEFINITE, 1, s, s) for s in range(k + 1, g + 1)]
        arcs.append(FoldArc(DEFINITE, 0, g + 1, g + 1))
        sectors.append(tuple(arcs))
    return FoldPattern(tuple(sectors))


def validate_fold_pattern(p: FoldPattern) -> FoldReport:
    """Check the sector and ray conditions; infer the parameters if valid."""
    bad: list[str] = []
    if len(p.sectors) != 3:
        return FoldReport(False, (f"{len(p.sectors)} sectors, need 3",))
    sizes = {len(s) for s in p.sectors}
    if len(sizes) != 1:
        bad.append(f"sectors disagree on arc count {sorted(len(s) for s in p.sectors)}")
    if p.double_points < 0:
        bad.append("negative double point count")
    ks = []
    g = max(len(s) for s in p.sectors) - 1
    for i, sector in enumerate(p.sectors, start=1):
        if not sector:
            bad.append(f"sector A{i} has no arcs")
            continue
        n = len(sector)
        definite = [a for a in sector if a.kind == DEFINITE]
        if len(definite) != 1:
            bad.append(f"sector A{i} has {len(definite)} definite arcs, needs exactly 1")
        for a in sector:
            if a.kind not in (DEFINITE, INDEFINITE):
                bad.append(f"sector A{i} has arc of unknown kind {a.kind!r}")
            if a.cusps not in (0, 1):
                bad.append(f"sector A{i} has an arc with {a.cusps} cusps")
            if a.kind == DEFINITE and a.cusps:
                bad.append(f"sector A{i} has a cusped definite arc")
            if a.start_slot < 1 or a.end_slot < 1:
                bad.append(f"sector A{i} arc endpoints must be at slots >= 1")
        if definite and (definite[0].start_slot != n or definite[0].end_slot != n):
            bad.append(f"sector A{i}: the definite arc must be outermost")
        starts = sorted(a.start_slot for a in sector)
        ends = sorted(a.end_slot for a in sector)
        if starts != list(range(1, n + 1)):
            bad.append(f"sector A{i} start slots {starts} do not fill 1..{n}")
        if ends != list(range(1, n + 1)):
            bad.append(f"sector A{i} end slots {ends} do not fill 1..{n}")
        ks.append(sum(1 for a in sector if a.kind == INDEFINITE and a.cusps == 0))
    if bad:
        return FoldReport(False, tuple(bad))
    params = TrisectionParams(g, ks[0], ks[1], ks[2])
    return FoldReport(True, (), params)
