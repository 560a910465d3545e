"""Combinatorial encoding of classical and virtual link diagrams.

A diagram is a rotation system over its classical crossings: each
crossing has four slots in counterclockwise order, an over-diagonal
flag (even: the strand through slots 0 and 2 is the overpasser), and
the slots of all crossings are matched into edges.  Strands transit a
crossing from slot i to slot i+2.  Virtual crossings are not recorded;
detour moves are therefore the identity on this representation.

Faces are traced with the region kept on the left of the walk, so the
corner cycle of a region is its counterclockwise boundary order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

Dart = tuple[str, int]
Corner = tuple[str, int]  # (crossing, position): between slots position and position+1


class DiagramError(ValueError):
    pass


class DuplicateSlotError(DiagramError):
    def __init__(self, msg, line=None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


class UnmatchedEdgeError(DiagramError):
    def __init__(self, msg, line=None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


class BadOverFlagError(DiagramError):
    def __init__(self, msg, line=None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


class NotClassicalError(DiagramError):
    pass


class MissingOrientationError(DiagramError):
    pass


class UnknownCrossingError(DiagramError):
    pass


class UnknownRegionError(DiagramError):
    pass


def natural_key(name: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


def dart_key(d: Dart):
    return (natural_key(d[0]), d[1])


@dataclass(frozen=True)
class Diagram:
    """Immutable rotation system plus zero-crossing loop components."""

    crossings: tuple[tuple[str, int], ...]  # (id, over flag 0|1), sorted
    edges: tuple[tuple[Dart, Dart], ...]    # perfect matching on darts, sorted
    loops: tuple[str, ...] = ()
    seeds: tuple[Dart, ...] = ()            # strand exits via this dart
    outer_marks: tuple[Corner, ...] = ()

    def __init__(self, crossings, edges, loops=(), seeds=(), outer_marks=()):
        cr = tuple(sorted(((str(c), int(f)) for c, f in crossings),
                          key=lambda cf: natural_key(cf[0])))
        ids = [c for c, _ in cr]
        if len(set(ids)) != len(ids):
            raise DuplicateSlotError("duplicate crossing id")
        for c, f in cr:
            if f not in (0, 1):
                raise BadOverFlagError(f"crossing {c}: over flag must be 0 or 1")
        darts = {(c, s) for c, _ in cr for s in range(4)}
        norm = []
        seen: set[Dart] = set()
        for a, b in edges:
            a, b = tuple(a), tuple(b)
            for d in (a, b):
                if d not in darts:
                    raise UnmatchedEdgeError(f"edge endpoint {d} is not a slot")
                if d in seen:
                    raise DuplicateSlotError(f"slot {d} used twice")
                seen.add(d)
            if a == b:
                raise DuplicateSlotError(f"slot {a} used twice")
            norm.append(tuple(sorted((a, b), key=dart_key)))
        if seen != darts:
            missing = sorted(darts - seen, key=dart_key)[0]
            raise UnmatchedEdgeError(f"slot {missing} is not matched")
        lp = tuple(sorted((str(x) for x in loops), key=natural_key))
        if len(set(lp)) != len(lp):
            raise DuplicateSlotError("duplicate loop id")
        sd = tuple(sorted((tuple(s) for s in seeds), key=dart_key))
        for s in sd:
            if s not in darts:
                raise UnknownCrossingError(f"seed {s} is not a slot")
        om = tuple(sorted((tuple(m) for m in outer_marks), key=dart_key))
        for m in om:
            if m not in darts:
                raise UnknownCrossingError(f"outer mark {m} is not a corner")
        object.__setattr__(self, "crossings", cr)
        object.__setattr__(self, "edges", tuple(sorted(norm, key=lambda e: dart_key(e[0]))))
        object.__setattr__(self, "loops", lp)
        object.__setattr__(self, "seeds", sd)
        object.__setattr__(self, "outer_marks", om)

    # -- basic structure -------------------------------------------------

    @cached_property
    def flags(self) -> dict[str, int]:
        return dict(self.crossings)

    @cached_property
    def crossing_ids(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.crossings)

    @cached_property
    def partner(self) -> dict[Dart, Dart]:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def over_slots(self, c: str) -> tuple[int, int]:
        f = self.flags[c]
        return (f, f + 2)

    def is_over_slot(self, d: Dart) -> bool:
        return d[1] % 2 == self.flags[d[0]]

    def darts(self):
        return [(c, s) for c, _ in self.crossings for s in range(4)]

    # -- strands ---------------------------------------------------------

    def _next_exit(self, d: Dart) -> Dart:
        c, s = self.partner[d]
        return (c, (s + 2) % 4)

    @cached_property
    def curves(self) -> tuple[tuple[Dart, ...], ...]:
        """Closed strand walks, one per link component with crossings.

        Each curve is the cyclic sequence of exit darts in the canonical
        direction (the one containing the curve's smallest exit dart).
        """
        unseen = set(self.darts())
        out = []
        while unseen:
            start = min(unseen, key=dart_key)
            orbit = [start]
            d = self._next_exit(start)
            while d != start:
                orbit.append(d)
                d = self._next_exit(d)
            # the backward traversal exits where the forward one arrives
            reverse = {self.partner[x] for x in orbit}
            unseen -= set(orbit)
            unseen -= reverse
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def mu(self) -> int:
        """Number of link components."""
        return len(self.curves) + len(self.loops)

    @cached_property
    def pieces(self) -> tuple[tuple[str, ...], ...]:
        """Connected components: crossing-id groups, then one per loop."""
        parent = {c: c for c in self.crossing_ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a[0]), find(b[0])
            if ra != rb:
                parent[max(ra, rb, key=natural_key)] = min(ra, rb, key=natural_key)
        groups: dict[str, list[str]] = {}
        for c in self.crossing_ids:
            groups.setdefault(find(c), []).append(c)
        comps = [tuple(groups[r]) for r in sorted(groups, key=natural_key)]
        comps.extend(("loop", x) for x in self.loops)
        return tuple(comps)

    @cached_property
    def k(self) -> int:
        """Number of split pieces."""
        return len(self.pieces)

    # -- orientation -----------------------------------------------------

    @cached_property
    def orientation(self) -> dict[Dart, bool] | None:
        """Map dart -> True when the strand exits through it, from seeds.

        None when some crossing-bearing curve has no seed; conflicting
        seeds raise MissingOrientationError.
        """
        exits: dict[Dart, bool] = {}
        for curve in self.curves:
            forward = set(curve)
            backward = {self.partner[x] for x in curve}
            chosen = None
            for s in self.seeds:
                if s in forward:
                    want = True
                elif s in backward:
                    want = False
                else:
                    continue
                if chosen is None:
                    chosen = want
                elif chosen != want:
                    raise MissingOrientationError(f"conflicting seeds on one component near {s}")
            if chosen is None:
                return None
            for d in (forward if chosen else backward):
                exits[d] = True
            for d in (backward if chosen else forward):
                exits[d] = False
        return exits

    # -- faces -----------------------------------------------------------

    def _face_next(self, d: Dart) -> Dart:
        c, s = self.partner[d]
        return (c, (s - 1) % 4)

    @cached_property
    def face_orbits(self) -> tuple[tuple[Corner, ...], ...]:
        """Corner cycles of the rotation system (virtual regions).

        The walk keeps the region on its left; the corner list is the
        counterclockwise boundary order, rotated to start at the
        smallest corner.
        """
        unseen = set(self.darts())
        orbits = []
        while unseen:
            start = min(unseen, key=dart_key)
            orbit = [start]
            d = self._face_next(start)
            while d != start:
                orbit.append(d)
                d = self._face_next(d)
            unseen -= set(orbit)
            i = orbit.index(min(orbit, key=dart_key))
            orbits.append(tuple(orbit[i:] + orbit[:i]))
        return tuple(sorted(orbits, key=lambda o: dart_key(o[0])))

    @cached_property
    def piece_genus(self) -> dict[tuple, int]:
        """Genus of the abstract surface of each connected piece."""
        out = {}
        faces_by_piece: dict[tuple, int] = {}
        member = {}
        for piece in self.pieces:
            if piece[0] == "loop":
                out[piece] = 0
                continue
            faces_by_piece[piece] = 0
            for c in piece:
                member[c] = piece
        for orbit in self.face_orbits:
            faces_by_piece[member[orbit[0][0]]] += 1
        for piece, f in faces_by_piece.items():
            v = len(piece)
            chi = f - v  # E = 2V for a 4-valent graph
            if chi % 2:
                raise DiagramError("non-integral genus; corrupt rotation data")
            out[piece] = (2 - chi) // 2
        return out

    @cached_property
    def is_classical(self) -> bool:
        return all(g == 0 for g in self.piece_genus.values())


@dataclass(frozen=True)
class Region:
    name: str
    corners: tuple[Corner, ...] = ()
    loop_sides: tuple[tuple[str, int], ...] = ()

    def sort_key(self):
        keys = [(0, dart_key(c)) for c in self.corners]
        keys += [(1, natural_key(l), s) for l, s in self.loop_sides]
        return min(keys)


@dataclass(frozen=True)
class RegionTable:
    """Traced regions of a diagram in one of the two region senses."""

    mode: str
    regions: tuple[Region, ...]
    outer: str | None
    genus: tuple[tuple[tuple, int], ...]

    @cached_property
    def by_name(self) -> dict[str, Region]:
        return {r.name: r for r in self.regions}

    @cached_property
    def corner_region(self) -> dict[Corner, str]:
        out = {}
        for r in self.regions:
            for c in r.corners:
                out[c] = r.name
        return out

    @cached_property
    def loop_region(self) -> dict[tuple[str, int], str]:
        out = {}
        for r in self.regions:
            for side in r.loop_sides:
                out[side] = r.name
        return out


def resolve_mode(d: Diagram, mode: str | None) -> str:
    if mode is None:
        return "classical" if d.is_classical else "virtual"
    if mode not in ("classical", "virtual"):
        raise ValueError(f"bad region mode {mode!r}")
    return mode


def trace_faces(d: Diagram, mode: str | None = None) -> RegionTable:
    """Region table of the diagram.

    virtual: one region per face orbit plus two annulus regions per
    zero-crossing loop.  classical: requires genus 0 throughout; the
    designated outer face of each split piece is merged into a single
    region, and each loop contributes one bounded region.
    """
    mode = resolve_mode(d, mode)
    genus = d.piece_genus
    raw: list[tuple[tuple[Corner, ...], tuple[tuple[str, int], ...]]] = []
    raw.extend((orbit, ()) for orbit in d.face_orbits)

    if mode == "virtual":
        for lp in d.loops:
            raw.append(((), ((lp, 0),)))
            raw.append(((), ((lp, 1),)))
        parts = raw
    else:
        bad = [p for p, g in genus.items() if g > 0]
        if bad:
            raise NotClassicalError(f"piece {bad[0]} has positive genus")
        piece_of = {}
        for piece in d.pieces:
            if piece[0] == "loop":
                continue
            for c in piece:
                piece_of[c] = piece
        marks_by_piece: dict[tuple, Corner] = {}
        corner_orbit = {}
        for orbit, _ in raw:
            for c in orbit:
                corner_orbit[c] = orbit
        for m in d.outer_marks:
            piece = piece_of[m[0]]
            prev = marks_by_piece.get(piece)
            if prev is not None and corner_orbit[prev] is not corner_orbit[m]:
                raise DiagramError(f"conflicting outer marks for piece {piece}")
            marks_by_piece.setdefault(piece, m)
        outer_corners: list[Corner] = []
        outer_sides: list[tuple[str, int]] = []
        kept = []
        for orbit, _ in raw:
            piece = piece_of[orbit[0][0]]
            mark = marks_by_piece.get(piece)
            designated = (corner_orbit[mark] is orbit) if mark is not None \
                else (orbit[0] == min((c for o in d.face_orbits if piece_of[o[0][0]] == piece for c in o), key=dart_key))
            if designated:
                outer_corners.extend(orbit)
            else:
                kept.append((orbit, ()))
        for lp in d.loops:
            outer_sides.append((lp, 0))
            kept.append(((), ((lp, 1),)))
        if d.crossings or d.loops:
            kept.append((tuple(outer_corners), tuple(outer_sides)))
        parts = kept

    pre = [Region("?", tuple(c), tuple(s)) for c, s in parts]
    pre.sort(key=Region.sort_key)
    regions = tuple(Region(f"R{i + 1}", r.corners, r.loop_sides) for i, r in enumerate(pre))
    outer_name = None
    if mode == "classical" and regions:
        merged = (tuple(outer_corners), tuple(outer_sides))
        for r in regions:
            if (r.corners, r.loop_sides) == merged:
                outer_name = r.name
    return RegionTable(mode, regions, outer_name, tuple(sorted(genus.items())))


@dataclass(frozen=True)
class Arc:
    """Maximal strand segment broken only where it passes under."""

    name: str
    edges: tuple[tuple[Dart, Dart], ...]  # ordered along the walk; () for loops
    closed: bool
    loop: str | None = None

    @cached_property
    def darts(self) -> frozenset:
        return frozenset(d for e in self.edges for d in e)


def trace_arcs(d: Diagram) -> tuple[Arc, ...]:
    """Arcs of the diagram; each zero-crossing loop is one closed arc."""
    pieces = []
    for curve in d.curves:
        steps = []  # (exit dart, arrival dart)
        for x in curve:
            steps.append((x, d.partner[x]))
        breaks = [i for i, (_, arr) in enumerate(steps) if not d.is_over_slot(arr)]
        if not breaks:
            edges = tuple(tuple(sorted((x, a), key=dart_key)) for x, a in steps)
            pieces.append((edges, True, None))
            continue
        for bi, start in enumerate(breaks):
            end = breaks[(bi + 1) % len(breaks)]
            idx = start + 1
            run = []
            while True:
                i = idx % len(steps)
                run.append(tuple(sorted(steps[i], key=dart_key)))
                if i == end:
                    break
                idx += 1
            pieces.append((tuple(run), False, None))
    arcs = [Arc("?", edges, closed, lp) for edges, closed, lp in pieces]
    arcs.sort(key=lambda a: min(dart_key(x) for e in a.edges for x in e))
    arcs.extend(Arc("?", (), True, lp) for lp in d.loops)
    return tuple(Arc(f"g{i + 1}", a.edges, a.closed, a.loop) for i, a in enumerate(arcs))


def arc_at_dart(arcs) -> dict[Dart, str]:
    out = {}
    for a in arcs:
        for e in a.edges:
            out[e[0]] = a.name
            out[e[1]] = a.name
    return out


@dataclass(frozen=True)
class Coloring:
    """Checkerboard shading: 0 = unshaded, 1 = shaded."""

    mode: str
    shade: tuple[tuple[str, int], ...]

    @cached_property
    def of(self) -> dict[str, int]:
        return dict(self.shade)

    def shaded(self):
        return [r for r, s in self.shade if s == 1]

    def unshaded(self):
        return [r for r, s in self.shade if s == 0]

    def flipped(self) -> "Coloring":
        return Coloring(self.mode, tuple((r, 1 - s) for r, s in self.shade))


@dataclass(frozen=True)
class NotColorable:
    """Certificate: an edge flanked twice by one region, or an odd cycle."""

    edge: tuple[Dart, Dart] | None = None
    odd_cycle: tuple[str, ...] | None = None


def checkerboard_color(d: Diagram, mode: str | None = None,
                       table: RegionTable | None = None):
    """A two-shading with opposite shades across every edge, if one exists.

    Normalization: the merged outer region (classical) or the first
    region of each adjacency component (virtual) is unshaded.
    """
    if table is None:
        table = trace_faces(d, mode)
    adjacency: dict[str, list[tuple[str, object]]] = {r.name: [] for r in table.regions}
    for e in d.edges:
        a = table.corner_region[e[0]]
        b = table.corner_region[e[1]]
        if a == b:
            return NotColorable(edge=e)
        adjacency[a].append((b, e))
        adjacency[b].append((a, e))
    for lp in d.loops:
        a = table.loop_region[(lp, 0)]
        b = table.loop_region[(lp, 1)]
        if a == b:
            raise DiagramError("loop with one flanking region")
        adjacency[a].append((b, lp))
        adjacency[b].append((a, lp))

    shade: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    for root in [r.name for r in table.regions]:
        if root in shade:
            continue
        start = table.outer if table.outer in adjacency and table.outer not in shade and \
            _connected(adjacency, root, table.outer) else root
        shade[start] = 0
        parent[start] = None
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt, _ in adjacency[cur]:
                if nxt not in shade:
                    shade[nxt] = 1 - shade[cur]
                    parent[nxt] = cur
                    stack.append(nxt)
                elif shade[nxt] == shade[cur]:
                    return NotColorable(odd_cycle=_cycle(parent, cur, nxt))
    return Coloring(table.mode, tuple(sorted(shade.items(), key=lambda kv: natural_key(kv[0]))))


def _connected(adjacency, a, b):
    seen = {a}
    stack = [a]
    while stack:
        cur = stack.pop()
        if cur == b:
            return True
        for nxt, _ in adjacency[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def _cycle(parent, a, b):
    def chain(x):
        out = [x]
        while parent.get(x) is not None:
            x = parent[x]
            out.append(x)
        return out

    ca, cb = chain(a), chain(b)
    common = next(x for x in ca if x in set(cb))
    return tuple(ca[:ca.index(common) + 1] + cb[:cb.index(common)][::-1])


@dataclass(frozen=True)
class CornerLabels:
    """The four corners at a crossing in the roles V, W, X, Y.

    V and X form the diagonal pair with crossing index -1; W and Y the
    pair with +1.  V is the corner whose first slot carries the
    overpassing strand (either over slot gives an equivalent labeling;
    the smaller is chosen).
    """

    v: Corner
    w: Corner
    x: Corner
    y: Corner

    @property
    def eta(self) -> dict[Corner, int]:
        return {self.v: -1, self.x: -1, self.w: 1, self.y: 1}


def classify_corners(d: Diagram, c: str) -> CornerLabels:
    if c not in d.flags:
        raise UnknownCrossingError(f"unknown crossing {c!r}")
    i = d.flags[c]  # smaller over slot
    return CornerLabels(
        v=(c, i), w=(c, (i - 1) % 4), y=(c, (i + 1) % 4), x=(c, (i + 2) % 4))


def corner_eta(d: Diagram, corner: Corner) -> int:
    """Crossing index of the diagonal pair the corner belongs to."""
    return -1 if corner[1] % 2 == d.flags[corner[0]] else 1


def diagonal_corner(corner: Corner) -> Corner:
    return (corner[0], (corner[1] + 2) % 4)


# -- constructors --------------------------------------------------------


def build_torus2m(m: int) -> Diagram:
    """The m-crossing closed 2-braid diagram (classical, genus 0)."""
    if m < 1:
        raise ValueError("need at least one crossing")
    ids = [f"c{i + 1}" for i in range(m)]
    edges = []
    for i in range(m):
        j = (i + 1) % m
        edges.append(((ids[i], 0), (ids[j], 1)))
        edges.append(((ids[i], 3), (ids[j], 2)))
    seeds = [(ids[0], 3)]
    if m % 2 == 0:
        seeds.append((ids[0], 0))
    return Diagram([(c, 1) for c in ids], edges, seeds=seeds)


def build_kink() -> Diagram:
    """One-crossing unknot diagram."""
    return Diagram([("c1", 1)], [(("c1", 0), ("c1", 1)), (("c1", 2), ("c1", 3))],
                   seeds=[("c1", 0)])


def build_unknot_loop(name: str = "u1") -> Diagram:
    return Diagram([], [], loops=[name])


def _rename(d: Diagram, taken_crossings, taken_loops):
    ren = {}
    for c in d.crossing_ids:
        name = c
        while name in taken_crossings:
            name += "'"
        ren[c] = name
        taken_crossings.add(name)
    lren = {}
    for lp in d.loops:
        name = lp
        while name in taken_loops:
            name += "'"
        lren[lp] = name
        taken_loops.add(name)
    edges = [((ren[a[0]], a[1]), (ren[b[0]], b[1])) for a, b in d.edges]
    return (
        [(ren[c], f) for c, f in d.crossings],
        edges,
        [lren[lp] for lp in d.loops],
        [(ren[c], s) for c, s in d.seeds],
        [(ren[c], s) for c, s in d.outer_marks],
    )


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Split union; in classical mode the designated outer faces merge."""
    taken_c = set(d1.crossing_ids)
    taken_l = set(d1.loops)
    cr, ed, lp, sd, om = _rename(d2, taken_c, taken_l)
    return Diagram(
        list(d1.crossings) + cr,
        list(d1.edges) + ed,
        list(d1.loops) + lp,
        list(d1.seeds) + sd,
        list(d1.outer_marks) + om,
    )


def connected_sum(d1: Diagram, arc1: str, d2: Diagram, arc2: str,
                  edge1: int = 0, edge2: int = 0) -> Diagram:
    """Splice a designated edge of an arc of d1 with one of d2."""
    a1 = {a.name: a for a in trace_arcs(d1)}.get(arc1)
    a2 = {a.name: a for a in trace_arcs(d2)}.get(arc2)
    if a1 is None or a2 is None:
        raise DiagramError(f"unknown arc {arc1 if a1 is None else arc2!r}")
    if not a1.edges or not a2.edges:
        raise DiagramError("connected sum requires arcs with at least one edge")
    e1 = a1.edges[edge1 % len(a1.edges)]
    taken_c = set(d1.crossing_ids)
    taken_l = set(d1.loops)
    cr, ed, lp, sd, om = _rename(d2, taken_c, taken_l)
    renamed2 = Diagram(cr, ed, lp, sd, om)
    e2 = {a.name: a for a in trace_arcs(renamed2)}[arc2].edges[edge2 % len(a2.edges)]
    edges = [e for e in d1.edges if e != e1]
    edges += [e for e in renamed2.edges if e != e2]
    edges.append((e1[0], e2[1]))
    edges.append((e1[1], e2[0]))
    merged = Diagram(
        list(d1.crossings) + cr,
        edges,
        list(d1.loops) + lp,
        list(d1.seeds) + sd,
        list(d1.outer_marks),
    )
    return _drop_conflicting_seeds(merged)


def _drop_conflicting_seeds(d: Diagram) -> Diagram:
    seeds = []
    for s in d.seeds:
        try:
            Diagram(d.crossings, d.edges, d.loops, seeds + [s], d.outer_marks).orientation
            seeds.append(s)
        except MissingOrientationError:
            continue
    return Diagram(d.crossings, d.edges, d.loops, seeds, d.outer_marks)


# -- text format ---------------------------------------------------------


def parse_diagram(text: str) -> Diagram:
    """Parse the line-oriented diagram format.

    crossing <id> <e0> <e1> <e2> <e3> over=<even|odd>
    loop <id>
    seed <crossing>.<slot>
    outer <crossing>.<corner>
    """
    crossings = []
    loops = []
    seeds = []
    outer = []
    slot_of_label: dict[str, list[tuple[Dart, int]]] = {}
    seen_crossings = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "crossing":
            if len(fields) != 7:
                raise DiagramError(f"line {lineno}: expected 'crossing id e0 e1 e2 e3 over=...'")
            cid = fields[1]
            if cid in seen_crossings:
                raise DuplicateSlotError(f"crossing {cid} declared twice", lineno)
            seen_crossings[cid] = lineno
            if not fields[6].startswith("over="):
                raise BadOverFlagError(f"missing over flag for crossing {cid}", lineno)
            flagname = fields[6][len("over="):]
            if flagname not in ("even", "odd"):
                raise BadOverFlagError(f"over flag must be even or odd, got {flagname!r}", lineno)
            crossings.append((cid, 0 if flagname == "even" else 1))
            for slot, label in enumerate(fields[2:6]):
                slot_of_label.setdefault(label, []).append(((cid, slot), lineno))
        elif kind == "loop":
            if len(fields) != 2:
                raise DiagramError(f"line {lineno}: expected 'loop id'")
            loops.append(fields[1])
        elif kind in ("seed", "outer"):
            if len(fields) != 2 or "." not in fields[1]:
                raise DiagramError(f"line {lineno}: expected '{kind} crossing.slot'")
            cid, _, slot = fields[1].rpartition(".")
            if not slot.isdigit() or int(slot) > 3:
                raise DiagramError(f"line {lineno}: slot must be 0..3")
            (seeds if kind == "seed" else outer).append((cid, int(slot)))
        else:
            raise DiagramError(f"line {lineno}: unknown directive {kind!r}")
    edges = []
    for label, uses in sorted(slot_of_label.items(), key=lambda kv: natural_key(kv[0])):
        if len(uses) > 2:
            raise DuplicateSlotError(f"edge label {label!r} used {len(uses)} times", uses[2][1])
        if len(uses) == 1:
            raise UnmatchedEdgeError(f"edge label {label!r} used only once", uses[0][1])
        edges.append((uses[0][0], uses[1][0]))
    return Diagram(crossings, edges, loops, seeds, outer)


def format_diagram(d: Diagram) -> str:
    """Serialize in the line format with deterministic edge labels."""
    label = {}
    for i, e in enumerate(d.edges):
        label[e[0]] = label[e[1]] = f"e{i + 1}"
    lines = []
    for c, f in d.crossings:
        labels = " ".join(label[(c, s)] for s in range(4))
        lines.append(f"crossing {c} {labels} over={'even' if f == 0 else 'odd'}")
    lines.extend(f"loop {lp}" for lp in d.loops)
    lines.extend(f"seed {c}.{s}" for c, s in d.seeds)
    lines.extend(f"outer {c}.{s}" for c, s in d.outer_marks)
    return "\n".join(lines) + "\n"


def rotationally_equal(d1: Diagram, d2: Diagram) -> bool:
    """Equality up to rotating each crossing's slot frame (flags adjusted).

    Rotating one crossing's slots relabels its darts without changing
    the map, so this is label-preserving isomorphism of diagrams.
    """
    if d1.crossing_ids != d2.crossing_ids or d1.loops != d2.loops:
        return False
    if not d1.crossings:
        return d1.edges == d2.edges
    rot: dict[str, int] = {}
    for piece in d1.pieces:
        if piece[0] == "loop":
            continue
        root = piece[0]
        for r0 in range(4):
            trial = {root: r0}
            stack = [root]
            ok = True
            while stack and ok:
                c = stack.pop()
                for s in range(4):
                    b1 = d1.partner[(c, s)]
                    b2 = d2.partner[(c, (s + trial[c]) % 4)]
                    if b2[0] != b1[0]:
                        ok = False
                        break
                    want = (b2[1] - b1[1]) % 4
                    if b1[0] in trial:
                        if trial[b1[0]] != want:
                            ok = False
                            break
                    else:
                        trial[b1[0]] = want
                        stack.append(b1[0])
            if ok and all((d2.flags[c] - d1.flags[c] - trial[c]) % 2 == 0 for c in piece):
                rot.update(trial)
                break
        else:
            return False
    e2set = set(d2.edges)
    return all(
        tuple(sorted(((a[0], (a[1] + rot[a[0]]) % 4), (b[0], (b[1] + rot[b[0]]) % 4)),
                     key=dart_key)) in e2set
        for a, b in d1.edges)
