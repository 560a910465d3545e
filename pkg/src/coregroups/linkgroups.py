"""Group presentations read off a link diagram.

Builders for the arc core group, the two regional core groups, the
Wirtinger and Dehn groups, plus the checkerboard apparatus (coloring
graphs, Goeritz matrix, arc elements) and boundary-word quotients for
diagrams in thickened surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import IntMatrix
from .diagrams import (
    Coloring,
    Diagram,
    DiagramError,
    MissingOrientationError,
    NotClassicalError,
    RegionTable,
    UnknownRegionError,
    classify_corners,
    corner_eta,
    diagonal_corner,
    trace_arcs,
    trace_faces,
    arc_at_dart,
)
from .presentations import Presentation, Word, core_functor, tilde_pair


class UnknownArcError(DiagramError):
    pass


def arc_core(d: Diagram) -> Presentation:
    """One generator per arc; per crossing the relator a1 a2^-1 a1 a3^-1
    with a1 the overpassing arc (under-arc order is immaterial)."""
    arcs = trace_arcs(d)
    at = arc_at_dart(arcs)
    rels = []
    for c, flag in d.crossings:
        a1 = at[(c, flag)]
        u1, u2 = sorted(((flag + 1) % 4, (flag + 3) % 4))
        a2, a3 = at[(c, u1)], at[(c, u2)]
        rels.append(((a1, 1), (a2, -1), (a1, 1), (a3, -1)))
    return Presentation(tuple(a.name for a in arcs), rels)


def region_core(d: Diagram, mode: str | None = None,
                table: RegionTable | None = None) -> Presentation:
    """One generator per region; per crossing the relator V W^-1 Y X^-1."""
    if table is None:
        table = trace_faces(d, mode)
    rels = []
    for c, _ in d.crossings:
        lab = classify_corners(d, c)
        reg = table.corner_region
        rels.append(((reg[lab.v], 1), (reg[lab.w], -1), (reg[lab.y], 1), (reg[lab.x], -1)))
    return Presentation(tuple(r.name for r in table.regions), rels)


def second_region_core(d: Diagram, mode: str | None = None,
                       table: RegionTable | None = None) -> Presentation:
    """One generator and one boundary-walk relator per region.

    Walking counterclockwise around a region R, each crossing met
    contributes (R^-1 Q)^eta with Q the diagonally opposite region;
    freely trivial relators are dropped.
    """
    if table is None:
        table = trace_faces(d, mode)
    reg = table.corner_region
    rels = []
    for r in table.regions:
        letters: list[tuple[str, int]] = []
        for corner in r.corners:
            q = reg[diagonal_corner(corner)]
            if corner_eta(d, corner) == 1:
                letters += [(r.name, -1), (q, 1)]
            else:
                letters += [(q, -1), (r.name, 1)]
        rels.append(tuple(letters))
    rels = [r for r in rels if r]
    p = Presentation(tuple(r.name for r in table.regions), rels)
    return Presentation(p.generators, [r for r in p.relators if r])


def wirtinger(d: Diagram) -> Presentation:
    """Wirtinger presentation of an oriented diagram.

    Per crossing the relator is a1 a2 a1^-1 a3^-1, where a1 is the
    overpassing arc and a2 the underpassing arc on the right of an
    observer facing along a1.
    """
    exits = d.orientation
    if exits is None and d.crossings:
        raise MissingOrientationError("orientation seeds required for the Wirtinger group")
    arcs = trace_arcs(d)
    at = arc_at_dart(arcs)
    rels = []
    for c, flag in d.crossings:
        over = [(c, flag), (c, flag + 2)]
        o_out = next(x for x in over if exits[x])
        a1 = at[o_out]
        right = (c, (o_out[1] - 1) % 4)
        other = (c, (o_out[1] + 1) % 4)
        a2, a3 = at[right], at[other]
        rels.append(((a1, 1), (a2, 1), (a1, -1), (a3, -1)))
    return Presentation(tuple(a.name for a in arcs), rels)


def _pick_base(table: RegionTable, base: str | None) -> str:
    if base is None:
        base = table.outer if table.outer is not None else (
            table.regions[0].name if table.regions else None)
    if base is None or base not in table.by_name:
        raise UnknownRegionError(f"unknown region {base!r}")
    return base


def dehn(d: Diagram, base: str | None = None, mode: str | None = None,
         table: RegionTable | None = None) -> Presentation:
    """Dehn presentation: region generators, relators V W^-1 X Y^-1,
    and the base region generator set to the identity."""
    if table is None:
        table = trace_faces(d, mode)
    base = _pick_base(table, base)
    rels = []
    for c, _ in d.crossings:
        lab = classify_corners(d, c)
        reg = table.corner_region
        rels.append(((reg[lab.v], 1), (reg[lab.w], -1), (reg[lab.x], 1), (reg[lab.y], -1)))
    rels.append(((base, 1),))
    return Presentation(tuple(r.name for r in table.regions), rels)


def rc_zero(d: Diagram, base: str | None = None, mode: str | None = None,
            table: RegionTable | None = None) -> Presentation:
    """The region core modulo its free factor: region_core with the
    base region generator killed.  The choice of base is immaterial up
    to isomorphism."""
    if table is None:
        table = trace_faces(d, mode)
    base = _pick_base(table, base)
    p = region_core(d, table=table)
    return Presentation(p.generators, list(p.relators) + [((base, 1),)])


def arc_element_word(d: Diagram, table: RegionTable, coloring: Coloring,
                     arc, edge_index: int = 0) -> Word:
    """The word U S^-1 measured at one edge of the arc (U unshaded)."""
    if arc.edges:
        e = arc.edges[edge_index % len(arc.edges)]
        flanks = (table.corner_region[e[0]], table.corner_region[e[1]])
    else:
        flanks = (table.loop_region[(arc.loop, 0)], table.loop_region[(arc.loop, 1)])
    shades = [coloring.of[f] for f in flanks]
    if sorted(shades) != [0, 1]:
        raise DiagramError(f"arc {arc.name} is not checkerboard separated")
    u = flanks[shades.index(0)]
    s = flanks[shades.index(1)]
    return ((u, 1), (s, -1))


def arc_element_map(d: Diagram, coloring: Coloring,
                    table: RegionTable | None = None) -> dict[str, Word]:
    """Map each arc to the region word U S^-1 along it (any point of the
    arc gives the same group element; the first edge is used)."""
    if table is None:
        table = trace_faces(d, coloring.mode)
    return {a.name: arc_element_word(d, table, coloring, a) for a in trace_arcs(d)}


@dataclass(frozen=True)
class CheckerboardGraphs:
    """Multigraphs with one vertex per shaded (resp. unshaded) region
    and one edge per crossing; beta counts connected components."""

    shaded_vertices: tuple[str, ...]
    unshaded_vertices: tuple[str, ...]
    shaded_edges: tuple[tuple[str, str], ...]
    unshaded_edges: tuple[tuple[str, str], ...]
    beta_s: int
    beta_u: int


def _component_count(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in vertices})


def checkerboard_graphs(d: Diagram, coloring: Coloring,
                        table: RegionTable | None = None) -> CheckerboardGraphs:
    if table is None:
        table = trace_faces(d, coloring.mode)
    shaded = tuple(r.name for r in table.regions if coloring.of[r.name] == 1)
    unshaded = tuple(r.name for r in table.regions if coloring.of[r.name] == 0)
    s_edges = []
    u_edges = []
    for c, flag in d.crossings:
        pairs = [((c, flag), (c, flag + 2)), ((c, (flag + 1) % 4), (c, (flag + 3) % 4))]
        for p, q in pairs:
            rp, rq = table.corner_region[p], table.corner_region[q]
            if coloring.of[rp] != coloring.of[rq]:
                raise DiagramError("diagonal corners must share a shade")
            (s_edges if coloring.of[rp] == 1 else u_edges).append(tuple(sorted((rp, rq))))
    return CheckerboardGraphs(
        shaded, unshaded, tuple(s_edges), tuple(u_edges),
        _component_count(shaded, s_edges), _component_count(unshaded, u_edges))


def goeritz_matrix(d: Diagram, coloring: Coloring, deleted: str | None = None,
                   table: RegionTable | None = None) -> IntMatrix:
    """Goeritz matrix over the unshaded regions, one deleted.

    Off-diagonal (i, j) entries sum -eta over the crossings where the
    two regions form the unshaded diagonal pair; diagonal entries are
    the negated row sums taken before deletion.
    """
    if table is None:
        table = trace_faces(d, coloring.mode)
    if table.mode != "classical":
        raise NotClassicalError("Goeritz matrix requires a classical diagram")
    unshaded = [r.name for r in table.regions if coloring.of[r.name] == 0]
    if deleted is None:
        deleted = table.outer
    if deleted not in table.by_name:
        raise UnknownRegionError(f"unknown region {deleted!r}")
    if deleted not in unshaded:
        raise DiagramError(f"region {deleted} is not unshaded")
    index = {u: i for i, u in enumerate(unshaded)}
    n = len(unshaded)
    g = [[0] * n for _ in range(n)]
    for c, flag in d.crossings:
        for corner in [(c, flag), (c, (flag + 1) % 4)]:
            rp = table.corner_region[corner]
            rq = table.corner_region[diagonal_corner(corner)]
            if coloring.of[rp] == 1:
                continue
            i, j = index[rp], index[rq]
            if i != j:
                g[i][j] -= corner_eta(d, corner)
                g[j][i] -= corner_eta(d, corner)
    for i in range(n):
        g[i][i] = -sum(g[i][j] for j in range(n) if j != i)
    k = index[deleted]
    return [[g[i][j] for j in range(n) if j != k] for i in range(n) if i != k]


def core_of_wirtinger(d: Diagram) -> Presentation:
    """Core of the Wirtinger group with its standard parity; isomorphic
    to the arc core group (verified at the invariant level)."""
    return core_functor(wirtinger(d))


@dataclass(frozen=True)
class BoundaryWord:
    """Arcs met along a boundary arc of a fundamental region, with
    intersection signs.  The signs are recorded but the alternating
    rewrite discards them."""

    letters: tuple[tuple[str, int], ...]

    def __init__(self, letters):
        object.__setattr__(self, "letters", tuple((str(a), int(s)) for a, s in letters))


def boundary_quotient(p: Presentation, words) -> Presentation:
    """Quotient an arc-core presentation by boundary-arc words.

    Each boundary word contributes both alternating rewrites of its arc
    sequence as relators.
    """
    rels = list(p.relators)
    for w in words:
        letters = w.letters if isinstance(w, BoundaryWord) else tuple(w)
        for a, _ in letters:
            if a not in p.generators:
                raise UnknownArcError(f"unknown arc {a!r}")
        if not letters:
            continue
        plus, minus = tilde_pair(tuple(letters))
        for t in (plus, minus):
            if t:
                rels.append(t)
    return Presentation(p.generators, rels)
