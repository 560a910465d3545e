"""Finite verification engines.

Homomorphism counting into small permutation groups and HLT-style
Todd-Coxeter coset enumeration.  Both are deterministic: element
tables are closed in BFS order and cosets are numbered by first
definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentations import Presentation, Word

Perm = tuple[int, ...]

MAX_GROUP_ORDER = 10_000
DEFAULT_MAX_COSETS = 100_000


def compose(p: Perm, q: Perm) -> Perm:
    """(p * q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def from_cycles(cycles, degree: int) -> Perm:
    """Permutation from 1-based disjoint cycles, e.g. [(1, 2, 3), (4, 5)]."""
    out = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            out[a - 1] = b - 1
    return tuple(out)


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation like '(1 2 3)(4 5)'; symbols are 1-based."""
    cycles = []
    depth = 0
    cur: list[int] = []
    for tok in text.replace("(", " ( ").replace(")", " ) ").replace(",", " ").split():
        if tok == "(":
            depth += 1
            cur = []
        elif tok == ")":
            depth -= 1
            cycles.append(tuple(cur))
        else:
            cur.append(int(tok))
    if depth != 0:
        raise ValueError(f"unbalanced cycle notation: {text!r}")
    n = degree or max((max(c) for c in cycles if c), default=1)
    return from_cycles(cycles, n)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by permutation generators on {1..degree}."""

    degree: int
    generators: tuple[Perm, ...]
    name: str = ""

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise ValueError("generators must be bijections on the degree")

    def elements(self) -> tuple[Perm, ...]:
        """The full element list, closed breadth-first from the identity."""
        ident = tuple(range(self.degree))
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            new = []
            for x in frontier:
                for g in self.generators:
                    y = compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        new.append(y)
                        if len(order) > MAX_GROUP_ORDER:
                            raise ValueError("group order exceeds the supported bound")
            frontier = new
        return tuple(order)

    def order(self) -> int:
        return len(self.elements())


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("order must be positive")
    return FiniteGroup(m, (tuple(range(1, m)) + (0,),), name=f"z{m}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return FiniteGroup(1, ((0,),), name="s1")
    gens = (from_cycles([(1, 2)], n), from_cycles([tuple(range(1, n + 1))], n))
    return FiniteGroup(n, gens, name=f"s{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup(max(n, 1), (tuple(range(max(n, 1))),), name=f"a{n}")
    if n % 2:
        cyc = tuple(range(1, n + 1))
    else:
        cyc = tuple(range(2, n + 1))
    gens = (from_cycles([(1, 2, 3)], n), from_cycles([cyc], n))
    return FiniteGroup(n, gens, name=f"a{n}")


def named_target(name: str) -> FiniteGroup:
    """Resolve CLI target names: z<m>, s<n>, a<n>."""
    kind, num = name[:1].lower(), name[1:]
    if not num.isdigit():
        raise ValueError(f"bad target name {name!r}")
    n = int(num)
    if kind == "z":
        return cyclic_group(n)
    if kind == "s":
        return symmetric_group(n)
    if kind == "a":
        return alternating_group(n)
    raise ValueError(f"bad target name {name!r}")


def load_permutation_group(text: str) -> FiniteGroup:
    """One generator per line in cycle notation; degree is the max symbol."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    degree = 1
    for ln in lines:
        p = parse_cycles(ln)
        degree = max(degree, len(p))
    gens = tuple(parse_cycles(ln, degree) for ln in lines)
    return FiniteGroup(degree, gens)


def count_homomorphisms(p: Presentation, t: FiniteGroup) -> int:
    """Number of generator assignments into t satisfying every relator.

    Depth-first search with two prunings: relators whose support is
    fully assigned are checked immediately, and a generator occurring
    exactly once in an otherwise-assigned relator is solved for rather
    than branched on.
    """
    elements = t.elements()
    ident = tuple(range(t.degree))
    table = {e: invert(e) for e in elements}
    gens = p.generators
    relators = [r for r in p.relators if r]

    def value(r: Word, assign) -> Perm:
        out = ident
        for g, e in r:
            x = assign[g]
            out = compose(out, x if e == 1 else table[x])
        return out

    def solved_value(r: Word, gen: str, assign):
        """Solve r = 1 for the single unassigned letter gen^e."""
        idx = next(i for i, (g, _) in enumerate(r) if g == gen)
        e = r[idx][1]
        u = value(r[:idx], assign)
        v = value(r[idx + 1:], assign)
        x = compose(table[u], table[v])  # g^e = u^-1 v^-1
        return x if e == 1 else table[x]

    def search(assign, remaining: tuple[str, ...]) -> int:
        while True:
            for r in relators:
                missing = [g for g in {g for g, _ in r} if g not in assign]
                if not missing:
                    continue
                if len(missing) == 1 and sum(1 for g, _ in r if g == missing[0]) == 1:
                    g = missing[0]
                    assign = dict(assign)
                    assign[g] = solved_value(r, g, assign)
                    remaining = tuple(x for x in remaining if x != g)
                    break
            else:
                break
        for r in relators:
            if all(g in assign for g, _ in r) and value(r, assign) != ident:
                return 0
        if not remaining:
            return 1
        g, rest = remaining[0], remaining[1:]
        total = 0
        for x in elements:
            nxt = dict(assign)
            nxt[g] = x
            total += search(nxt, rest)
        return total

    return search({}, tuple(gens))


DEFAULT_FINGERPRINT_TARGETS = ("z2", "z3", "z4", "s3", "a4")


def hom_fingerprint(p: Presentation, targets=DEFAULT_FINGERPRINT_TARGETS) -> tuple[int, ...]:
    """Vector of homomorphism counts into the named targets."""
    return tuple(count_homomorphisms(p, named_target(t)) for t in targets)


@dataclass
class _Table:
    """Todd-Coxeter working state: one row per coset, one column per
    generator and inverse; entries are coset indices or None."""

    ncols: int
    rows: list[list[int | None]] = field(default_factory=list)
    rep: list[int] = field(default_factory=list)

    def new_coset(self) -> int:
        self.rows.append([None] * self.ncols)
        self.rep.append(len(self.rows) - 1)
        return len(self.rows) - 1

    def find(self, a: int) -> int:
        while self.rep[a] != a:
            self.rep[a] = self.rep[self.rep[a]]
            a = self.rep[a]
        return a


def coset_enumerate(p: Presentation, subgroup_words=(),
                    max_cosets: int = DEFAULT_MAX_COSETS) -> int | None:
    """Index of the subgroup generated by subgroup_words, or None.

    HLT strategy: every relator is scanned and filled at every live
    coset in first-definition order; subgroup generator words are
    scanned at coset 0 first.  Returns None when the enumeration would
    need more than max_cosets cosets (Exceeded is a value, not an error).
    """
    gens = p.generators
    col = {}
    for i, g in enumerate(gens):
        col[(g, 1)] = 2 * i
        col[(g, -1)] = 2 * i + 1
    inv_col = [2 * (i // 2) + 1 - i % 2 for i in range(2 * len(gens))]

    t = _Table(2 * len(gens))
    t.new_coset()
    queue: list[tuple[int, int]] = []

    def set_entry(a: int, c: int, b: int):
        ea = t.rows[a][c]
        if ea is not None and t.find(ea) != t.find(b):
            queue.append((ea, b))
        t.rows[a][c] = b
        eb = t.rows[b][inv_col[c]]
        if eb is not None and t.find(eb) != t.find(a):
            queue.append((eb, a))
        t.rows[b][inv_col[c]] = a

    def merge_all():
        while queue:
            x, y = queue.pop()
            x, y = t.find(x), t.find(y)
            if x == y:
                continue
            lo, hi = min(x, y), max(x, y)
            t.rep[hi] = lo
            for c in range(t.ncols):
                v = t.rows[hi][c]
                if v is None:
                    continue
                v = t.find(v)
                existing = t.rows[lo][c]
                if existing is None:
                    set_entry(lo, c, v)
                elif t.find(existing) != v:
                    queue.append((existing, v))

    def scan_and_fill(a: int, wd: Word) -> bool:
        """Scan wd at coset a, defining cosets to close the gap.
        Returns False only when the coset limit is hit."""
        cols = [col[let] for let in wd]
        f, i = a, 0
        b, r = a, len(cols) - 1
        while True:
            while i <= r:
                nxt = t.rows[f][cols[i]]
                if nxt is None:
                    break
                f, i = t.find(nxt), i + 1
            if i > r:
                if f != b:
                    queue.append((f, b))
                    merge_all()
                return True
            while r >= i:
                prev = t.rows[b][inv_col[cols[r]]]
                if prev is None:
                    break
                b, r = t.find(prev), r - 1
            if r < i:
                queue.append((f, b))
                merge_all()
                return True
            if r == i:
                set_entry(f, cols[i], b)
                merge_all()
                return True
            if len(t.rows) >= max_cosets:
                return False
            c = t.new_coset()
            set_entry(f, cols[i], c)
            f, i = c, i + 1

    for w in subgroup_words:
        if w and not scan_and_fill(0, tuple(w)):
            return None

    a = 0
    while a < len(t.rows):
        if t.find(a) != a:
            a += 1
            continue
        for rel in p.relators:
            if not rel:
                continue
            if not scan_and_fill(a, rel):
                return None
            if t.find(a) != a:
                break
        if t.find(a) == a:
            for c in range(t.ncols):
                if t.find(a) != a:
                    break
                if t.rows[a][c] is None:
                    if len(t.rows) >= max_cosets:
                        return None
                    b = t.new_coset()
                    set_entry(a, c, b)
                    merge_all()
        a += 1

    return sum(1 for i in range(len(t.rows)) if t.find(i) == i)
