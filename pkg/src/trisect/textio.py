"""File formats and rendering.

Two formats:

* ``.tds`` chord-word sources, the human-authorable layer: a genus header
  plus one line per curve giving its cyclic word of scaffold transits
  (``alpha m1 = b1[1] -a2[3] ...``).
* ``.tdx`` canonical diagram files, the interchange truth: versioned,
  line-based, permutations in cycle notation, curves with explicit dart
  sequences, optional slide certificates, and a checksum of the canonical
  code.  Parsing a canonical file and serializing it again is
  byte-identical, and parse(serialize(d)) reproduces d dart for dart.

Rendering produces deterministic SVG: diagrams on a circle-backed polygon
with the scaffold on the rim and curves as interior chords (alpha red, beta
blue, gamma green, scaffold black), fold patterns on the trisected disk.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Optional

from . import _chords
from .combmap import CombMap, canonical_code
from .diagram import (
    ALL_COLORS,
    ALPHA,
    BETA,
    CURVE_COLORS,
    Curve,
    Diagram,
    DiagramError,
    GAMMA,
    SCAFFOLD,
)
from .folds import FoldPattern
from .moves import Certificate, SlideArc, SlideMove

FORMAT_VERSION = "tdx 1"
SOURCE_VERSION = "tds 1"

SameColorChordsCross = _chords.SameColorChordsCross
IndexGap = _chords.IndexGap
UnmatchedEdgeCount = _chords.UnmatchedEdgeCount


class ParseError(DiagramError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class VersionMismatch(ParseError):
    pass


class ChecksumMismatch(ParseError):
    pass


# -- helpers -------------------------------------------------------------------


def _cycles_to_text(perm: Iterable[int]) -> str:
    perm = list(perm)
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts)


def _parse_cycles(text: str, n: int, line: int) -> list[int]:
    perm = list(range(n))
    hit = [False] * n
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise ParseError(line, pos + 1, f"expected '(' in cycle notation, found {ch!r}")
        end = text.find(")", pos)
        if end < 0:
            raise ParseError(line, pos + 1, "unclosed cycle")
        body = text[pos + 1 : end].split()
        try:
            cyc = [int(x) for x in body]
        except ValueError:
            raise ParseError(line, pos + 2, f"non-integer dart in cycle {text[pos:end + 1]!r}")
        for d in cyc:
            if not (0 <= d < n):
                raise ParseError(line, pos + 2, f"dart {d} out of range 0..{n - 1}")
            if hit[d]:
                raise ParseError(line, pos + 2, f"dart {d} appears twice")
            hit[d] = True
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
        pos = end + 1
    return perm


def _digest(code: bytes) -> str:
    return hashlib.sha256(code).hexdigest()[:16]


# -- canonical .tdx format -------------------------------------------------------


def serialize(d: Diagram) -> str:
    """Canonical text form; deterministic byte for byte."""
    m = d.map
    lines = [FORMAT_VERSION, f"darts {m.n}"]
    lines.append("sigma " + _cycles_to_text(m.sigma))
    lines.append("theta " + _cycles_to_text(m.theta))
    if m.boundary:
        lines.append("boundary " + " ".join(map(str, sorted(m.boundary))))
    for c in d.curves:
        lines.append(f"curve {c.color} {c.name} : " + " ".join(map(str, c.darts)))
    for color in ALL_COLORS:
        default = tuple(c.name for c in d.curves if c.color == color)
        if d.curve_order[color] != default:
            lines.append(f"order {color} " + " ".join(d.curve_order[color]))
    for pair in sorted(d.certificates):
        cert = d.certificates[pair]
        lines.append(f"cert {pair[0]} {pair[1]} k {cert.k}")
        for mv in cert.moves:
            arc = mv.arc
            crossings = " ".join(map(str, arc.crossings))
            lines.append(
                f"  move {mv.color} {mv.curve_i} {mv.curve_j} : "
                f"{arc.start} / {crossings} / {arc.end}"
            )
        if cert.terminal_iso:
            lines.append("  iso " + " ".join(map(str, cert.terminal_iso)))
        lines.append("endcert")
    lines.append("code " + _digest(canonical_code(m)))
    return "\n".join(lines) + "\n"


def parse(text: str) -> Diagram:
    """Parse a canonical diagram file; errors carry line and column."""
    raw_lines = text.splitlines()
    lines: list[tuple[int, str]] = []
    for i, ln in enumerate(raw_lines, start=1):
        body = ln.split("#", 1)[0].rstrip()
        if body.strip():
            lines.append((i, body))
    if not lines:
        raise ParseError(1, 1, "empty file")
    ln0, head = lines[0]
    if head.strip() != FORMAT_VERSION:
        raise VersionMismatch(ln0, 1, f"expected {FORMAT_VERSION!r} header, found {head.strip()!r}")
    n: Optional[int] = None
    sigma: Optional[list[int]] = None
    theta: Optional[list[int]] = None
    boundary: list[int] = []
    curves: list[Curve] = []
    orders: dict[str, tuple[str, ...]] = {}
    certs: dict[tuple[str, str], Certificate] = {}
    code_field: Optional[str] = None
    idx = 1

    def want_int(tok: str, line: int, what: str) -> int:
        try:
            return int(tok)
        except ValueError:
            raise ParseError(line, 1, f"{what} must be an integer, found {tok!r}")

    while idx < len(lines):
        line_no, body = lines[idx]
        stripped = body.strip()
        fields = stripped.split()
        kw = fields[0]
        if kw == "darts":
            if len(fields) != 2:
                raise ParseError(line_no, 1, "darts line needs one count")
            n = want_int(fields[1], line_no, "dart count")
        elif kw in ("sigma", "theta"):
            if n is None:
                raise ParseError(line_no, 1, "darts line must come before permutations")
            perm = _parse_cycles(stripped[len(kw):], n, line_no)
            if kw == "sigma":
                sigma = perm
            else:
                theta = perm
        elif kw == "boundary":
            boundary = [want_int(x, line_no, "boundary dart") for x in fields[1:]]
        elif kw == "curve":
            if len(fields) < 5 or fields[3] != ":":
                raise ParseError(line_no, 1, "curve line must be 'curve COLOR NAME : darts...'")
            color, name = fields[1], fields[2]
            if color not in ALL_COLORS:
                raise ParseError(line_no, len("curve ") + 1, f"unknown color {color!r}")
            darts = tuple(want_int(x, line_no, "curve dart") for x in fields[4:])
            curves.append(Curve(name, color, darts))
        elif kw == "order":
            if len(fields) < 2 or fields[1] not in ALL_COLORS:
                raise ParseError(line_no, 1, "order line must be 'order COLOR names...'")
            orders[fields[1]] = tuple(fields[2:])
        elif kw == "cert":
            if len(fields) != 5 or fields[3] != "k":
                raise ParseError(line_no, 1, "cert line must be 'cert COLOR COLOR k K'")
            pair = (fields[1], fields[2])
            k = want_int(fields[4], line_no, "certificate k")
            moves: list[SlideMove] = []
            iso: tuple[int, ...] = ()
            idx += 1
            while idx < len(lines):
                mline_no, mbody = lines[idx]
                mfields = mbody.strip().split()
                if mfields[0] == "endcert":
                    break
                if mfields[0] == "move":
                    try:
                        color, ci, cj = mfields[1], mfields[2], mfields[3]
                        rest = " ".join(mfields[5:])
                        start_s, cross_s, end_s = [p.strip() for p in rest.split("/")]
                        arc = SlideArc(
                            int(start_s),
                            tuple(int(x) for x in cross_s.split()) if cross_s else (),
                            int(end_s),
                        )
                    except (IndexError, ValueError):
                        raise ParseError(mline_no, 1, "malformed move line")
                    moves.append(SlideMove(color, ci, cj, arc))
                elif mfields[0] == "iso":
                    iso = tuple(want_int(x, mline_no, "iso entry") for x in mfields[1:])
                else:
                    raise ParseError(mline_no, 1, f"unexpected {mfields[0]!r} inside cert block")
                idx += 1
            else:
                raise ParseError(line_no, 1, "cert block missing endcert")
            certs[pair] = Certificate(pair, tuple(moves), k, iso)
        elif kw == "code":
            if len(fields) != 2:
                raise ParseError(line_no, 1, "code line needs one digest")
            code_field = fields[1]
        else:
            raise ParseError(line_no, 1, f"unknown keyword {kw!r}")
        idx += 1

    if n is None or sigma is None or theta is None:
        raise ParseError(lines[-1][0], 1, "file is missing darts, sigma or theta")
    labels: list[Optional[str]] = [None] * n
    for c in curves:
        for dart in c.darts:
            if not (0 <= dart < n):
                raise ParseError(1, 1, f"curve {c.name} references dart {dart} out of range")
            labels[dart] = c.color
            labels[theta[dart]] = c.color
    if any(l is None for l in labels):
        missing = labels.index(None)
        raise ParseError(1, 1, f"dart {missing} belongs to no curve")
    try:
        cmap = CombMap(sigma, theta, boundary, labels)
        d = Diagram(cmap, curves, orders or None, certificates=certs)
    except DiagramError as e:
        raise ParseError(1, 1, f"inconsistent diagram: {e}")
    if code_field is not None and code_field != _digest(canonical_code(cmap)):
        raise ChecksumMismatch(1, 1, "stored canonical code does not match the diagram")
    return d


# -- chord-word .tds sources ------------------------------------------------------


def parse_source(text: str) -> _chords.ChordSpec:
    lines = [
        (i, ln.split("#", 1)[0].rstrip())
        for i, ln in enumerate(text.splitlines(), start=1)
    ]
    lines = [(i, ln) for i, ln in lines if ln.strip()]
    if not lines:
        raise ParseError(1, 1, "empty source")
    ln0, head = lines[0]
    if head.strip() != SOURCE_VERSION:
        raise VersionMismatch(ln0, 1, f"expected {SOURCE_VERSION!r} header, found {head.strip()!r}")
    genus = boundary = None
    curves = []
    for line_no, body in lines[1:]:
        fields = body.strip().split()
        if fields[0] == "surface":
            try:
                spec = dict(zip(fields[1::2], fields[2::2]))
                genus = int(spec["genus"])
                boundary = int(spec.get("boundary", "0"))
            except (ValueError, KeyError):
                raise ParseError(line_no, 1, "surface line must be 'surface genus G [boundary B]'")
        elif fields[0] in CURVE_COLORS:
            if len(fields) < 4 or fields[2] != "=":
                raise ParseError(line_no, 1, f"curve line must be '{fields[0]} NAME = word...'")
            try:
                word = _chords.parse_word_tokens(" ".join(fields[3:]))
            except DiagramError as e:
                raise ParseError(line_no, body.find("=") + 2, str(e))
            curves.append(_chords.ChordCurveSpec(fields[0], fields[1], tuple(word)))
        else:
            raise ParseError(line_no, 1, f"unknown keyword {fields[0]!r}")
    if genus is None:
        raise ParseError(lines[-1][0], 1, "missing surface line")
    return _chords.ChordSpec(genus, boundary or 0, tuple(curves))


def compile_polygon_source(text: str) -> Diagram:
    """Compile a chord-word source into a diagram."""
    return _chords.compile_chords(parse_source(text))


# -- SVG rendering ------------------------------------------------------------------


_SVG_COLORS = {ALPHA: "red", BETA: "blue", GAMMA: "green", SCAFFOLD: "black"}


def _fmt(x: float) -> str:
    out = f"{x:.2f}"
    return "0.00" if out == "-0.00" else out


def render_svg(obj, size: int = 480) -> str:
    """Deterministic SVG for a diagram or a fold pattern."""
    if isinstance(obj, FoldPattern):
        return _render_folds(obj, size)
    return _render_diagram(obj, size)


def _render_diagram(d: Diagram, size: int) -> str:
    import math

    m = d.map
    cx = cy = size / 2
    radius = size * 0.42
    scaffold_darts = [x for x in range(m.n) if m.labels[x] == SCAFFOLD]
    curve_darts = [x for x in range(m.n) if m.labels[x] != SCAFFOLD]

    pos: dict[int, tuple[float, float]] = {}
    if scaffold_darts:
        sub = m.without_edges(curve_darts) if curve_darts else m
        # walk a scaffold face to spread the rim vertices around the circle
        keep = sorted(set(scaffold_darts))
        back = {i: dart for i, dart in enumerate(keep)}
        walk = [0]
        while True:
            nxt = sub.phi(walk[-1])
            if nxt == walk[0] or len(walk) > sub.n:
                break
            walk.append(nxt)
        total = len(walk)
        for t, small in enumerate(walk):
            ang = 2 * math.pi * t / total - math.pi / 2
            dart = back[small]
            pt = (cx + radius * math.cos(ang), cy + radius * math.sin(ang))
            for vd in m.vertex_darts(dart):
                pos.setdefault(vd, pt)
    # Tutte-style relaxation for interior crossing vertices
    vertex_ids = list(range(len(m.vertices())))
    coords: dict[int, tuple[float, float]] = {}
    for v_i, v in enumerate(m.vertices()):
        anchored = [pos[x] for x in v if x in pos]
        if anchored:
            coords[v_i] = anchored[0]
    for v_i, v in enumerate(m.vertices()):
        coords.setdefault(v_i, (cx, cy))
    fixed = {v_i for v_i, v in enumerate(m.vertices()) if any(x in pos for x in v)}
    for _ in range(80):
        for v_i, v in enumerate(m.vertices()):
            if v_i in fixed:
                continue
            nb = [coords[m.vertex_index(m.theta[x])] for x in v]
            coords[v_i] = (sum(p[0] for p in nb) / len(nb), sum(p[1] for p in nb) / len(nb))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" fill="none" '
        f'stroke="#bbbbbb" stroke-width="1"/>',
    ]
    drawn = set()
    for color in (SCAFFOLD,) + CURVE_COLORS:
        for x in range(m.n):
            e = min(x, m.theta[x])
            if e in drawn or m.labels[x] != color:
                continue
            drawn.add(e)
            a = coords[m.vertex_index(x)]
            b = coords[m.vertex_index(m.theta[x])]
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            bend = (
                mid[0] + (cx - mid[0]) * 0.12,
                mid[1] + (cy - mid[1]) * 0.12,
            )
            parts.append(
                f'<path d="M {_fmt(a[0])} {_fmt(a[1])} Q {_fmt(bend[0])} {_fmt(bend[1])} '
                f'{_fmt(b[0])} {_fmt(b[1])}" fill="none" stroke="{_SVG_COLORS[color]}" '
                f'stroke-width="{2 if color != SCAFFOLD else 1}"/>'
            )
    for v_i, v in enumerate(m.vertices()):
        if len(v) == 4:
            p = coords[v_i]
            parts.append(
                f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="2.2" fill="#222222"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_folds(p: FoldPattern, size: int) -> str:
    import math

    cx = cy = size / 2
    rmax = size * 0.42
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    ray_angles = [0.0, -2 * math.pi / 3, -4 * math.pi / 3]
    labels = ["R_0", "R_2pi/3", "R_4pi/3"]
    for ang, lab in zip(ray_angles, labels):
        ex, ey = cx + rmax * 1.08 * math.cos(ang), cy + rmax * 1.08 * math.sin(ang)
        parts.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(ex)}" y2="{_fmt(ey)}" '
            f'stroke="#888888" stroke-width="1" stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{_fmt(ex)}" y="{_fmt(ey)}" font-size="12" fill="#555555">{lab}</text>'
        )
    n_arcs = max(len(s) for s in p.sectors)
    for sec_i, sector in enumerate(p.sectors):
        a0 = ray_angles[sec_i]
        a1 = ray_angles[(sec_i + 1) % 3]
        if a1 >= a0:
            a1 -= 2 * math.pi
        mid = (a0 + a1) / 2
        lx, ly = cx + rmax * 0.55 * math.cos(mid), cy + rmax * 0.55 * math.sin(mid)
        parts.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="14" fill="#333333">'
            f"A{sec_i + 1}</text>"
        )
        for arc in sector:
            r0 = rmax * arc.start_slot / (n_arcs + 0.5)
            r1 = rmax * arc.end_slot / (n_arcs + 0.5)
            color = "#000000" if arc.kind == "definite" else "#8800aa"
            steps = 24
            pts = []
            for s in range(steps + 1):
                t = s / steps
                ang = a0 + (a1 - a0) * t
                r = r0 + (r1 - r0) * t
                if arc.cusps:
                    r *= 1 - 0.25 * math.sin(math.pi * t)
                pts.append((cx + r * math.cos(ang), cy + r * math.sin(ang)))
            path = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts)
            dash = "" if arc.kind == "indefinite" else ' stroke-dasharray="1 0"'
            parts.append(
                f'<path d="{path}" fill="none" stroke="{color}" stroke-width="2"{dash}/>'
            )
            if arc.cusps:
                t = 0.5
                ang = a0 + (a1 - a0) * t
                r = (r0 + (r1 - r0) * t) * 0.75
                gx, gy = cx + r * math.cos(ang), cy + r * math.sin(ang)
                parts.append(
                    f'<circle cx="{_fmt(gx)}" cy="{_fmt(gy)}" r="3" fill="#8800aa"/>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
