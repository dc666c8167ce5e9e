"""Command line interface.

Reads ``.tds`` chord-word sources or canonical ``.tdx`` files, applies
transformations, prints deterministic plain-text reports, and writes
diagrams or SVG.  Exit codes: 0 for success and valid verdicts, 1 for
invalid-input verdicts and failed searches, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import diagram as dg
from . import folds, invariants, moves, search, textio
from .diagram import ALPHA, BETA, CURVE_COLORS, GAMMA, TRISECTION_PAIRS, DiagramError

_PAIR_NAMES = {"ab": (ALPHA, BETA), "bg": (BETA, GAMMA), "ga": (GAMMA, ALPHA)}


def _load(path: str) -> dg.Diagram:
    text = Path(path).read_text()
    if path.endswith(".tds"):
        return textio.compile_polygon_source(text)
    return textio.parse(text)


def _save(d: dg.Diagram, path: str) -> None:
    Path(path).write_text(textio.serialize(d))


def _cmd_validate(args) -> int:
    d = _load(args.file)
    colors = {c.color for c in d.curves if c.color != "scaffold"}
    if colors >= {ALPHA, BETA, GAMMA}:
        rep = dg.validate_trisection(d)
        params = f" {rep.params}" if rep.params else ""
        print(f"trisection: {rep.level}{params}")
        for v in rep.verdicts:
            extra = f" ({v.detail})" if v.detail else ""
            print(f"  pair {v.pair[0]}/{v.pair[1]}: {v.level}"
                  + (f" k={v.k}" if v.k is not None else "") + extra)
        return 0 if rep.level != dg.FAILED else 1
    rep = dg.validate_heegaard(d)
    verdict = "valid" if rep.valid else "invalid"
    print(f"heegaard: {verdict} genus={rep.genus} crossings={rep.crossings}")
    for color, sub in ((ALPHA, rep.alpha), (BETA, rep.beta)):
        why = f" ({sub.reason})" if sub.reason else ""
        print(f"  {color}: {'cut system' if sub.ok else 'not a cut system'}{why}")
    return 0 if rep.valid else 1


def _cmd_invariants(args) -> int:
    d = _load(args.file)
    colors = {c.color for c in d.curves if c.color != "scaffold"}
    if colors >= {ALPHA, BETA, GAMMA}:
        try:
            inv = invariants.trisection_invariants(d)
        except DiagramError as e:
            print(f"invalid: {e}", file=sys.stderr)
            return 1
        print(f"{inv.params} chi={inv.euler_characteristic} H1={inv.h1}"
              + ("" if inv.certified else " (k estimated)"))
        for pair, h in sorted(inv.pair_h1.items()):
            print(f"  H1({pair[0]}/{pair[1]} splitting) = {h}")
        return 0
    try:
        h = invariants.h1_heegaard(d)
    except DiagramError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return 1
    print(f"genus={d.genus} H1={h}")
    return 0


def _cmd_slide(args) -> int:
    d = _load(args.file)
    arc = moves.SlideArc(args.start, tuple(args.cross or ()), args.end)
    move = moves.SlideMove(args.color, args.curve_i, args.curve_j, arc)
    d2 = moves.reduce_bigons(moves.slide(d, move))
    _save(d2, args.output)
    print(f"slide applied; {d2.map.n} darts")
    return 0


def _cmd_reduce(args) -> int:
    d = _load(args.file)
    d2 = moves.reduce_bigons(d)
    _save(d2, args.output)
    print(f"reduced; {d.map.n} -> {d2.map.n} darts")
    return 0


def _cmd_stabilize(args) -> int:
    d = _load(args.file)
    if args.heegaard:
        d2 = moves.stabilize_heegaard(d)
    else:
        d2 = moves.stabilize(d, args.i)
    _save(d2, args.output)
    print(f"stabilized; genus {d.genus} -> {d2.genus}")
    return 0


def _cmd_csum(args) -> int:
    d = moves.connected_sum(_load(args.file_a), _load(args.file_b))
    _save(d, args.output)
    print(f"connected sum; genus {d.genus}")
    return 0


def _cmd_standardize(args) -> int:
    d = _load(args.file)
    cfg = search.SearchConfig(
        max_depth=args.max_depth,
        max_arc_crossings=args.max_arc,
        node_budget=args.budget,
    )
    if args.pair == "all":
        triple = search.standardize_all(d, cfg)
        for pair, out in zip(TRISECTION_PAIRS, triple.outcomes):
            print(f"pair {pair[0]}/{pair[1]}: {out}")
        if triple.augmented is not None:
            print(f"augmented diagram verified, complexity {triple.report.complexity}")
            if args.output:
                d2 = dg.Diagram(
                    d.map, d.curves, d.curve_order,
                    dict(zip(TRISECTION_PAIRS, triple.augmented.certificates)),
                )
                _save(d2, args.output)
            return 0
        return 1
    pair = _PAIR_NAMES[args.pair]
    out = search.standardize(d, pair, cfg)
    print(str(out))
    if out.found and args.output:
        certs = dict(d.certificates)
        certs[pair] = out.certificate
        _save(dg.Diagram(d.map, d.curves, d.curve_order, certs), args.output)
    return 0 if out.found else 1


def _cmd_verify_cert(args) -> int:
    d = _load(args.file)
    if not d.certificates:
        print("no certificates stored", file=sys.stderr)
        return 1
    ok = True
    for pair in sorted(d.certificates):
        rep = moves.verify_certificate(d, d.certificates[pair])
        status = f"ok k={rep.k} moves={rep.moves}" if rep.ok else f"FAILED ({rep.detail})"
        print(f"cert {pair[0]}/{pair[1]}: {status}")
        ok = ok and rep.ok
    return 0 if ok else 1


def _cmd_render(args) -> int:
    d = _load(args.file)
    Path(args.output).write_text(textio.render_svg(d))
    print(f"wrote {args.output}")
    return 0


def _cmd_foldpattern(args) -> int:
    p = folds.standard_fold_pattern(args.g, args.k1, args.k2, args.k3)
    rep = folds.validate_fold_pattern(p)
    print(f"fold pattern {rep.params}: {'valid' if rep.valid else 'invalid'}")
    for i in range(3):
        census = ",".join(map(str, p.ray_census(i)))
        print(f"  ray {i}: indices outside-in {census}")
    if args.output:
        Path(args.output).write_text(textio.render_svg(p))
        print(f"wrote {args.output}")
    return 0 if rep.valid else 1


def _cmd_convert(args) -> int:
    d = _load(args.file)
    _save(d, args.output)
    print(f"wrote canonical {args.output}")
    return 0


def _cmd_scramble(args) -> int:
    d = _load(args.file)
    rng = random.Random(args.seed)
    applied = 0
    for _ in range(args.moves):
        candidates = []
        for color in CURVE_COLORS:
            candidates.extend(search.enumerate_slides(d, color, args.max_arc))
        if not candidates:
            break
        d = moves.reduce_bigons(moves.slide(d, candidates[rng.randrange(len(candidates))]))
        applied += 1
    _save(d, args.output)
    print(f"applied {applied} random slides (seed {args.seed})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trisect",
        description="Heegaard and trisection diagram toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="grade a diagram file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("invariants", help="parameters, Euler characteristic, homology")
    p.add_argument("file")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("slide", help="apply one handle slide")
    p.add_argument("file")
    p.add_argument("--color", required=True, choices=CURVE_COLORS)
    p.add_argument("--curve-i", required=True)
    p.add_argument("--curve-j", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--cross", type=int, nargs="*", default=[])
    p.add_argument("--end", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_slide)

    p = sub.add_parser("reduce", help="remove empty bigons")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("stabilize", help="connected sum with a standard genus-1 diagram")
    p.add_argument("file")
    p.add_argument("--i", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--heegaard", action="store_true",
                   help="use the genus-1 S^3 diagram instead of a trisection stabilizer")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_stabilize)

    p = sub.add_parser("csum", help="connected sum of two diagrams")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_csum)

    p = sub.add_parser("standardize", help="search for standardizing slide sequences")
    p.add_argument("file")
    p.add_argument("--pair", choices=("ab", "bg", "ga", "all"), default="all")
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--max-arc", type=int, default=4)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_standardize)

    p = sub.add_parser("verify-cert", help="verify certificates stored in a diagram file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify_cert)

    p = sub.add_parser("render", help="render a diagram to SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("foldpattern", help="build and check a standard fold pattern")
    p.add_argument("g", type=int)
    p.add_argument("k1", type=int)
    p.add_argument("k2", type=int)
    p.add_argument("k3", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_foldpattern)

    p = sub.add_parser("convert", help="rewrite a diagram in canonical form")
    p.add_argument("file")
    p.add_argument("output")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("scramble", help="apply seeded random slides (test support)")
    p.add_argument("file")
    p.add_argument("--moves", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-arc", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_scramble)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except DiagramError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
