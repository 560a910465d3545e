"""Reidemeister moves on the rotation-system encoding.

Sites name a local configuration: a kink crossing for r1-, an edge
dart (plus side and over flag) for r1+, a corner identifying a bigon
face for r2-, a dart pair bounding a common region for r2+, and a
corner identifying a triangle face for r3.  Detour moves do not exist
here because virtual crossings are not recorded.
"""

from __future__ import annotations

import random

from .diagrams import (
    Corner,
    Dart,
    Diagram,
    DiagramError,
    _drop_conflicting_seeds,
    dart_key,
)


class IllegalSiteError(DiagramError):
    pass


def _fresh_ids(d: Diagram, n: int) -> list[str]:
    used = set(d.crossing_ids)
    out = []
    i = 1
    while len(out) < n:
        name = f"m{i}"
        if name not in used:
            out.append(name)
        i += 1
    return out


def _fresh_loop(d: Diagram) -> str:
    used = set(d.loops)
    i = 1
    while f"u{i}" in used:
        i += 1
    return f"u{i}"


def _smooth_away(d: Diagram, removed: set[str]) -> Diagram:
    """Delete crossings, letting both strands run straight through them.

    Strand fragments that end up with no crossing at all become new
    zero-crossing loop components.
    """
    def wire(dart: Dart) -> Dart:
        return (dart[0], (dart[1] + 2) % 4)

    def step(dart: Dart) -> Dart:
        # arrive at dart, pass through its crossing, follow the next edge
        return d.partner[wire(dart)]

    gone = {(c, s) for c in removed for s in range(4)}

    new_edges = []
    done = set()
    for a, b in d.edges:
        for start in (a, b):
            if start in gone or start in done:
                continue
            x = d.partner[start]
            while x in gone:
                x = step(x)
            new_edges.append(tuple(sorted((start, x), key=dart_key)))
            done.update((start, x))

    # cycles of the traversal map that never leave the removed set are
    # closed curves with no crossings left; each unoriented one is a loop
    new_loops = list(d.loops)
    visited = set()
    cycles = 0
    for start in sorted(gone, key=dart_key):
        if start in visited:
            continue
        x = start
        internal = True
        while x not in visited:
            visited.add(x)
            x = step(x)
            if x not in gone:
                internal = False
                break
        if internal and x == start:
            cycles += 1
    for _ in range(cycles // 2):
        new_loops.append(_fresh_loop(Diagram([], [], new_loops)))

    crossings = [(c, f) for c, f in d.crossings if c not in removed]
    seeds = [s for s in d.seeds if s[0] not in removed]
    marks = [m for m in d.outer_marks if m[0] not in removed]
    return _drop_conflicting_seeds(Diagram(crossings, new_edges, new_loops, seeds, marks))


# -- r1 ------------------------------------------------------------------


def omega1_minus_sites(d: Diagram) -> list[str]:
    out = []
    for c, _ in d.crossings:
        for s in range(4):
            if d.partner[(c, s)] == (c, (s + 1) % 4):
                out.append(c)
                break
    return out


def apply_omega1_minus(d: Diagram, crossing: str) -> Diagram:
    if crossing not in d.flags:
        raise IllegalSiteError(f"unknown crossing {crossing!r}")
    if crossing not in omega1_minus_sites(d):
        raise IllegalSiteError(f"crossing {crossing} is not a kink")
    return _smooth_away(d, {crossing})


def apply_omega1_plus(d: Diagram, dart: Dart, side: str = "left",
                      over: bool = True) -> Diagram:
    """Insert a kink into the edge at the given dart.

    side chooses which flank of the strand the new monogon pokes into;
    over makes the first transit of the new crossing the overpass.
    """
    dart = tuple(dart)
    if dart not in d.partner:
        raise IllegalSiteError(f"no edge at {dart}")
    if side not in ("left", "right"):
        raise IllegalSiteError(f"side must be left or right, got {side!r}")
    p = d.partner[dart]
    (c,) = _fresh_ids(d, 1)
    edges = [e for e in d.edges if e != tuple(sorted((dart, p), key=dart_key))]
    if side == "left":
        edges += [(dart, (c, 0)), ((c, 2), (c, 3)), ((c, 1), p)]
    else:
        edges += [(dart, (c, 0)), ((c, 1), (c, 2)), ((c, 3), p)]
    flag = 0 if over else 1
    return Diagram(list(d.crossings) + [(c, flag)], edges, d.loops, d.seeds, d.outer_marks)


# -- r2 ------------------------------------------------------------------


def _face_of_dart(d: Diagram, dart: Dart):
    for orbit in d.face_orbits:
        if dart in orbit:
            return orbit
    raise IllegalSiteError(f"no face at {dart}")


def _bigon_at(d: Diagram, corner: Corner):
    orbit = _face_of_dart(d, corner)
    if len(orbit) != 2 or orbit[0][0] == orbit[1][0]:
        raise IllegalSiteError(f"face at {corner} is not a two-crossing bigon")
    return orbit


def omega2_minus_sites(d: Diagram) -> list[Corner]:
    out = []
    for orbit in d.face_orbits:
        if len(orbit) != 2 or orbit[0][0] == orbit[1][0]:
            continue
        (c1, a), (c2, b) = orbit
        if d.is_over_slot((c1, a)) == d.is_over_slot((c2, (b + 1) % 4)):
            out.append(orbit[0])
    return out


def apply_omega2_minus(d: Diagram, corner: Corner) -> Diagram:
    corner = tuple(corner)
    orbit = _bigon_at(d, corner)
    (c1, a), (c2, b) = orbit
    if d.is_over_slot((c1, a)) != d.is_over_slot((c2, (b + 1) % 4)):
        raise IllegalSiteError(f"bigon at {corner} is a clasp, one strand over each crossing")
    return _smooth_away(d, {c1, c2})


def omega2_plus_sites(d: Diagram) -> list[tuple[Dart, Dart]]:
    """Dart pairs bounding a common region (distinct edges).

    For a classical split diagram the designated outer faces of two
    different pieces also bound a common region, so such cross-piece
    pairs are included.
    """
    out = []
    for orbit in d.face_orbits:
        for i, d1 in enumerate(orbit):
            for d2 in orbit[i + 1:]:
                if d2 != d.partner[d1]:
                    out.append((d1, d2))
    if d.is_classical and len([p for p in d.pieces if p[0] != "loop"]) > 1:
        outer = {}
        piece_of = {}
        for piece in d.pieces:
            if piece[0] == "loop":
                continue
            for c in piece:
                piece_of[c] = piece
        marks = {}
        for m in d.outer_marks:
            marks.setdefault(piece_of[m[0]], m)
        for piece in d.pieces:
            if piece[0] == "loop":
                continue
            corners = [c for o in d.face_orbits if piece_of[o[0][0]] == piece for c in o]
            mark = marks.get(piece)
            outer[piece] = _face_of_dart(d, mark) if mark else _face_of_dart(d, min(corners, key=dart_key))
        keys = sorted(outer, key=lambda p: p[0])
        for i, p1 in enumerate(keys):
            for p2 in keys[i + 1:]:
                out.append((outer[p1][0], outer[p2][0]))
    return out


def apply_omega2_plus(d: Diagram, dart1: Dart, dart2: Dart, over: bool = True) -> Diagram:
    """Push the strand at dart1 across the strand at dart2.

    The two darts must bound a common region; over passes the pushed
    finger over the other strand at both new crossings.
    """
    dart1, dart2 = tuple(dart1), tuple(dart2)
    for x in (dart1, dart2):
        if x not in d.partner:
            raise IllegalSiteError(f"no edge at {x}")
    if dart1 == dart2 or d.partner[dart1] == dart2:
        raise IllegalSiteError("need two distinct edges")
    if (dart1, dart2) not in omega2_plus_sites(d) and (dart2, dart1) not in omega2_plus_sites(d):
        raise IllegalSiteError(f"darts {dart1} and {dart2} do not bound a common region")
    p1, p2 = d.partner[dart1], d.partner[dart2]
    co, cr = _fresh_ids(d, 2)
    drop = {tuple(sorted((dart1, p1), key=dart_key)), tuple(sorted((dart2, p2), key=dart_key))}
    edges = [e for e in d.edges if e not in drop]
    edges += [
        (dart1, (co, 3)), ((co, 1), (cr, 1)), ((cr, 3), p1),
        (dart2, (cr, 0)), ((cr, 2), (co, 0)), ((co, 2), p2),
    ]
    flag = 1 if over else 0  # the finger runs through slots 1 and 3
    crossings = list(d.crossings) + [(co, flag), (cr, flag)]
    return _drop_conflicting_seeds(
        Diagram(crossings, edges, d.loops, d.seeds, d.outer_marks))


# -- r3 ------------------------------------------------------------------


def _triangle_at(d: Diagram, corner: Corner):
    orbit = _face_of_dart(d, corner)
    if len(orbit) != 3 or len({c for c, _ in orbit}) != 3:
        raise IllegalSiteError(f"face at {corner} is not a three-crossing triangle")
    return orbit


def _triangle_top_exists(d: Diagram, orbit) -> bool:
    # strand i runs along the edge out of (c_i, a_i): over at c_i via slot
    # a_i, over at c_{i+1} via slot a_{i+1}+1
    for i in range(3):
        ci, ai = orbit[i]
        cj, aj = orbit[(i + 1) % 3]
        if d.is_over_slot((ci, ai)) and d.is_over_slot((cj, (aj + 1) % 4)):
            return True
    return False


def omega3_sites(d: Diagram) -> list[Corner]:
    out = []
    for orbit in d.face_orbits:
        if len(orbit) == 3 and len({c for c, _ in orbit}) == 3:
            if _triangle_top_exists(d, orbit):
                out.append(orbit[0])
    return out


def apply_omega3(d: Diagram, corner: Corner) -> Diagram:
    """Slide the triangle at the given face to the other side.

    Legal when one strand passes over both others around the face; the
    three crossings keep their strand pairs and over/under data.
    """
    corner = tuple(corner)
    orbit = _triangle_at(d, corner)
    if not _triangle_top_exists(d, orbit):
        raise IllegalSiteError(f"triangle at {corner} has the cyclic over pattern")
    (c1, a1), (c2, a2), (c3, a3) = orbit

    def m4(x):
        return x % 4

    before_out = [
        (c1, m4(a1 + 2)), (c1, m4(a1 + 3)),
        (c2, m4(a2 + 2)), (c2, m4(a2 + 3)),
        (c3, m4(a3 + 2)), (c3, m4(a3 + 3)),
    ]
    move = {
        (c1, m4(a1 + 2)): (c2, m4(a2 + 2)),  # strand 1 entry
        (c2, m4(a2 + 3)): (c1, m4(a1)),      # strand 1 exit
        (c2, m4(a2 + 2)): (c3, m4(a3 + 3)),  # strand 2 entry
        (c3, m4(a3 + 3)): (c2, m4(a2 + 1)),  # strand 2 exit
        (c3, m4(a3 + 2)): (c1, m4(a1 + 1)),  # strand 3 entry
        (c1, m4(a1 + 3)): (c3, m4(a3 + 2)),  # strand 3 exit
    }
    triangle_darts = {(c1, a1), (c1, m4(a1 + 1)), (c2, a2), (c2, m4(a2 + 1)),
                      (c3, a3), (c3, m4(a3 + 1))}
    edges = []
    for e in d.edges:
        if (e[0] in triangle_darts or e[1] in triangle_darts
                or e[0] in move or e[1] in move):
            continue
        edges.append(e)
    seen = set()
    for x in before_out:
        if x in seen:
            continue
        p = d.partner[x]
        seen.update((x, p))
        q = move.get(p, p)
        edges.append(tuple(sorted((move[x], q), key=dart_key)))
    edges += [
        tuple(sorted(((c2, m4(a2)), (c1, m4(a1 + 2))), key=dart_key)),
        tuple(sorted(((c3, m4(a3 + 1)), (c2, m4(a2 + 3))), key=dart_key)),
        tuple(sorted(((c1, m4(a1 + 3)), (c3, m4(a3))), key=dart_key)),
    ]
    flags = dict(d.crossings)
    flags[c2] ^= 1
    crossings = [(c, flags[c]) for c, _ in d.crossings]
    seeds = [s for s in d.seeds if s[0] not in (c1, c2, c3)]
    marks = [m for m in d.outer_marks if m[0] not in (c1, c2, c3)]
    return _drop_conflicting_seeds(Diagram(crossings, edges, d.loops, seeds, marks))


# -- dispatch ------------------------------------------------------------

MOVES = ("r1+", "r1-", "r2+", "r2-", "r3")


def apply_move(d: Diagram, move: str, site) -> Diagram:
    """Apply a Reidemeister move at a site; returns a new diagram."""
    if move == "r1-":
        return apply_omega1_minus(d, site if isinstance(site, str) else site[0])
    if move == "r1+":
        dart, side, over = site
        return apply_omega1_plus(d, dart, side, over)
    if move == "r2-":
        return apply_omega2_minus(d, site)
    if move == "r2+":
        dart1, dart2, over = site
        return apply_omega2_plus(d, dart1, dart2, over)
    if move == "r3":
        return apply_omega3(d, site)
    raise IllegalSiteError(f"unknown move {move!r}")


def parse_move_spec(d: Diagram, spec: str):
    """CLI move syntax, e.g. r1-:c2 | r1+:c1.0:left:over | r2-:c1.3 |
    r2+:c1.0,c2.3:over | r3:c2.1"""
    head, _, rest = spec.partition(":")
    if head not in MOVES:
        raise IllegalSiteError(f"unknown move {head!r}")

    def dart(tok):
        c, _, s = tok.rpartition(".")
        if not s.isdigit():
            raise IllegalSiteError(f"bad slot reference {tok!r}")
        return (c, int(s))

    if head == "r1-":
        return head, rest
    if head == "r1+":
        parts = rest.split(":")
        if len(parts) not in (1, 2, 3):
            raise IllegalSiteError(f"bad r1+ site {rest!r}")
        side = parts[1] if len(parts) > 1 else "left"
        over = (parts[2] if len(parts) > 2 else "over") == "over"
        return head, (dart(parts[0]), side, over)
    if head in ("r2-", "r3"):
        return head, dart(rest)
    parts = rest.split(":")
    pair = parts[0].split(",")
    if len(pair) != 2:
        raise IllegalSiteError(f"bad r2+ site {rest!r}")
    over = (parts[1] if len(parts) > 1 else "over") == "over"
    return head, (dart(pair[0]), dart(pair[1]), over)


def random_legal_moves(d: Diagram, rng: random.Random, count: int):
    """Sample (move, site) pairs legal on d, deterministically from rng."""
    pool = []
    pool += [("r1-", c) for c in omega1_minus_sites(d)]
    pool += [("r2-", c) for c in omega2_minus_sites(d)]
    pool += [("r3", c) for c in omega3_sites(d)]
    for e in d.edges:
        for side in ("left", "right"):
            for over in (True, False):
                pool.append(("r1+", (e[0], side, over)))
    for d1, d2 in omega2_plus_sites(d):
        for over in (True, False):
            pool.append(("r2+", (d1, d2, over)))
    if not pool:
        return []
    return [pool[rng.randrange(len(pool))] for _ in range(count)]
