"""Shared independent oracles for the test suite."""

import itertools
import math


def minor_gcd_divisors(m):
    """Invariant factors via gcds of k x k minors (exponential; small inputs).

    d1 * ... * dk equals the gcd of all k x k minors, so dk is the ratio
    of consecutive minor gcds.  Independent of the elimination code.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0

    def det(sub):
        n = len(sub)
        if n == 0:
            return 1
        total = 0
        for perm in itertools.permutations(range(n)):
            sign = perm_sign(perm)
            prod = 1
            for i, j in enumerate(perm):
                prod *= sub[i][j]
            total += sign * prod
        return total

    def perm_sign(perm):
        sign = 1
        for i, j in itertools.combinations(range(len(perm)), 2):
            if perm[i] > perm[j]:
                sign = -sign
        return sign

    gcds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[m[i][j] for j in ci] for i in ri]
                g = math.gcd(g, det(sub))
        if g == 0:
            break
        gcds.append(g)
    return [gcds[k] // gcds[k - 1] for k in range(1, len(gcds))]


def brute_force_hom_count(p, t):
    """Hom count by plain exhaustive assignment (no pruning)."""
    from coregroups.enumeration import compose, invert

    elements = t.elements()
    ident = tuple(range(t.degree))
    count = 0
    for assignment in itertools.product(elements, repeat=len(p.generators)):
        env = dict(zip(p.generators, assignment))
        ok = True
        for r in p.relators:
            val = ident
            for g, e in r:
                val = compose(val, env[g] if e == 1 else invert(env[g]))
            if val != ident:
                ok = False
                break
        if ok:
            count += 1
    return count


def abelian_hom_count(group, m):
    """|Hom(A, Z/m)| from the invariant-factor form of A."""
    total = m ** group.free_rank
    for d in group.divisors:
        total *= math.gcd(d, m)
    return total


def build_braid_closure(word, strands):
    """Diagram of a closed braid; word entries i mean sigma_i, -i its inverse.

    Slots at each crossing: 0=NE, 1=NW, 2=SW, 3=SE (counterclockwise);
    inputs arrive from above at NW/NE, the NW->SE strand is the over
    strand for a positive letter.
    """
    from coregroups.diagrams import Diagram

    pending = {}
    first = {}
    crossings = []
    edges = []
    for idx, letter in enumerate(word):
        pos = abs(letter)
        if not 1 <= pos < strands:
            raise ValueError(f"letter {letter} out of range")
        cid = f"x{idx + 1}"
        crossings.append((cid, 1 if letter > 0 else 0))
        for p, slot in ((pos, 1), (pos + 1, 0)):
            if p in pending:
                edges.append((pending[p], (cid, slot)))
            else:
                first[p] = (cid, slot)
            pending[p] = None
        pending[pos] = (cid, 2)
        pending[pos + 1] = (cid, 3)
    loops = []
    for p in range(1, strands + 1):
        if p in pending and pending[p] is not None:
            edges.append((pending[p], first[p]))
        elif p not in pending:
            loops.append(f"u{p}")
    seeds = [first[p] for p in sorted(first)]
    seen_curves = []
    d = Diagram(crossings, edges, loops)
    keep = []
    for s in seeds:
        curve = next(c for c in d.curves
                     if s in c or s in {d.partner[x] for x in c})
        key = frozenset(curve)
        if key not in seen_curves:
            seen_curves.append(key)
            keep.append(s)
    return Diagram(crossings, edges, loops, keep)
