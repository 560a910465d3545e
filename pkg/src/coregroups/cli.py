"""Command-line interface.

Exit codes: 0 on success, 1 on computation failure (bad input data,
group-theoretic preconditions), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import abelian, enumeration, linkgroups, moves, presentations, verification
from .diagrams import (
    Coloring,
    Diagram,
    DiagramError,
    checkerboard_color,
    parse_diagram,
    format_diagram,
    trace_arcs,
    trace_faces,
)

KINDS = ("ac", "rc", "rrc", "rc0", "wirtinger", "dehn")

MAX_COSETS_ENV = "COREGROUPS_MAX_COSETS"


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(args, human: str, record: dict):
    if getattr(args, "format", "text") == "json-lines":
        print(json.dumps(record, sort_keys=True))
    else:
        print(human)


def build_group(d: Diagram, kind: str, mode: str | None, base: str | None):
    if kind == "ac":
        return linkgroups.arc_core(d)
    if kind == "rc":
        return linkgroups.region_core(d, mode)
    if kind == "rrc":
        return linkgroups.second_region_core(d, mode)
    if kind == "rc0":
        return linkgroups.rc_zero(d, base, mode)
    if kind == "wirtinger":
        return linkgroups.wirtinger(d)
    if kind == "dehn":
        return linkgroups.dehn(d, base, mode)
    raise ValueError(f"unknown kind {kind!r}")


def cmd_info(args) -> int:
    d = parse_diagram(_read(args.file))
    genus = {" ".join(p) if p[0] != "loop" else f"loop {p[1]}": g
             for p, g in d.piece_genus.items()}
    arcs = trace_arcs(d)
    record = {
        "crossings": len(d.crossings),
        "edges": len(d.edges),
        "loops": len(d.loops),
        "arcs": len(arcs),
        "components": d.mu,
        "pieces": d.k,
        "classical": d.is_classical,
        "genus": genus,
    }
    mode = "classical" if d.is_classical else "virtual"
    table = trace_faces(d, mode)
    record["regions"] = len(table.regions)
    record["region_mode"] = mode
    col = checkerboard_color(d, table=table)
    record["checkerboard"] = isinstance(col, Coloring)
    lines = [
        f"crossings: {record['crossings']}",
        f"edges: {record['edges']}",
        f"loops: {record['loops']}",
        f"arcs: {record['arcs']}",
        f"components: {record['components']}",
        f"pieces: {record['pieces']}",
        f"classical: {'yes' if record['classical'] else 'no'}",
        f"genus: {' '.join(f'{k}={v}' for k, v in sorted(genus.items()))}",
        f"regions ({mode}): {record['regions']}",
        f"checkerboard: {'yes' if record['checkerboard'] else 'no'}",
    ]
    _emit(args, "\n".join(lines), record)
    return 0


def cmd_group(args) -> int:
    d = parse_diagram(_read(args.file))
    p = build_group(d, args.kind, args.region_mode, args.base)
    record = {
        "kind": args.kind,
        "generators": list(p.generators),
        "relators": [[[g, e] for g, e in r] for r in p.relators],
    }
    _emit(args, presentations.format_presentation(p).rstrip("\n"), record)
    return 0


def cmd_abelian(args) -> int:
    d = parse_diagram(_read(args.file))
    p = build_group(d, args.kind, args.region_mode, args.base)
    g = abelian.abelianize(p)
    record = {"kind": args.kind, "free_rank": g.free_rank, "divisors": list(g.divisors)}
    _emit(args, str(g), record)
    return 0


def _load_target(name: str) -> enumeration.FiniteGroup:
    if os.path.exists(name):
        return enumeration.load_permutation_group(_read(name))
    return enumeration.named_target(name)


def cmd_homcount(args) -> int:
    if args.kind:
        d = parse_diagram(_read(args.file))
        p = build_group(d, args.kind, args.region_mode, args.base)
    else:
        p = presentations.parse_presentation(_read(args.file))
    t = _load_target(args.target)
    n = enumeration.count_homomorphisms(p, t)
    _emit(args, str(n), {"target": args.target, "count": n})
    return 0


def cmd_order(args) -> int:
    p = presentations.parse_presentation(_read(args.file))
    limit = args.max_cosets
    if limit is None:
        limit = int(os.environ.get(MAX_COSETS_ENV, enumeration.DEFAULT_MAX_COSETS))
    subgroup = [presentations.word(w) for w in args.subgroup]
    idx = enumeration.coset_enumerate(p, subgroup, max_cosets=limit)
    if idx is None:
        _emit(args, "exceeded", {"exceeded": True, "max_cosets": limit})
        return 1
    _emit(args, str(idx), {"index": idx})
    return 0


def cmd_core(args) -> int:
    p = presentations.parse_presentation(_read(args.file))
    c = presentations.core_functor(p)
    record = {
        "generators": list(c.generators),
        "relators": [[[g, e] for g, e in r] for r in c.relators],
    }
    _emit(args, presentations.format_presentation(c).rstrip("\n"), record)
    return 0


def cmd_move(args) -> int:
    d = parse_diagram(_read(args.file))
    move, site = moves.parse_move_spec(d, args.spec)
    out = moves.apply_move(d, move, site)
    sys.stdout.write(format_diagram(out))
    return 0


def cmd_verify(args) -> int:
    corpus = verification.load_corpus(args.corpus)
    names = sorted(verification.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        report = verification.run_suite(name, corpus)
        ok = ok and report.passed
        if args.format == "json-lines":
            for e in sorted(report.entries, key=lambda e: (e.diagram, e.detail)):
                print(json.dumps({"suite": name, "diagram": e.diagram,
                                  "status": e.status, "detail": e.detail}, sort_keys=True))
        else:
            print("\n".join(report.lines()))
    return 0 if ok else 1


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="coregroups",
        description="Core group invariants of classical and virtual link diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json-lines"), default="text")

    p = sub.add_parser("info", help="diagram counts, genus, colorability")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(fn=cmd_info)

    def add_group_flags(p):
        p.add_argument("file")
        p.add_argument("--kind", choices=KINDS, required=True)
        p.add_argument("--region-mode", choices=("classical", "virtual"), default=None)
        p.add_argument("--base", default=None, help="region generator to kill (rc0, dehn)")
        add_format(p)

    p = sub.add_parser("group", help="print a presentation built from a diagram")
    add_group_flags(p)
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("abelian", help="abelianization of a diagram group")
    add_group_flags(p)
    p.set_defaults(fn=cmd_abelian)

    p = sub.add_parser("homcount", help="count homomorphisms into a finite target")
    p.add_argument("file", help="presentation file, or diagram file with --kind")
    p.add_argument("--target", required=True,
                   help="z<m>, s<n>, a<n>, or a permutation-list file")
    p.add_argument("--kind", choices=KINDS, default=None)
    p.add_argument("--region-mode", choices=("classical", "virtual"), default=None)
    p.add_argument("--base", default=None)
    add_format(p)
    p.set_defaults(fn=cmd_homcount)

    p = sub.add_parser("order", help="coset enumeration over a presentation file")
    p.add_argument("file")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--subgroup", action="append", default=[],
                   help="subgroup generator word, e.g. 'a b^-1'")
    add_format(p)
    p.set_defaults(fn=cmd_order)

    p = sub.add_parser("core", help="alternating-exponent rewrite of a presentation")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(fn=cmd_core)

    p = sub.add_parser("move", help="apply a Reidemeister move to a diagram")
    p.add_argument("file")
    p.add_argument("--spec", required=True,
                   help="r1-:c | r1+:c.s[:left|right][:over|under] | "
                        "r2-:c.s | r2+:c.s,c.s[:over|under] | r3:c.s")
    p.set_defaults(fn=cmd_move)

    p = sub.add_parser("verify", help="run a theorem check suite over a corpus")
    p.add_argument("--suite", default="all",
                   choices=("all",) + tuple(sorted(verification.SUITES)))
    p.add_argument("--corpus", default=None)
    add_format(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def run(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (DiagramError, presentations.OddRelatorError,
            presentations.NotAlternatingError, presentations.UnknownGeneratorError,
            presentations.EmptyWordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())
