"""Free-group words and finitely presented groups.

Words are tuples of (generator, exponent) letters with exponents +-1;
powers are always stored expanded, so the alternating-exponent rewrite
used by the core construction is unambiguous letter by letter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Letter = tuple[str, int]
Word = tuple[Letter, ...]


class EmptyWordError(ValueError):
    pass


class OddRelatorError(ValueError):
    pass


class NotAlternatingError(ValueError):
    pass


class UnknownGeneratorError(ValueError):
    pass


def word(text: str) -> Word:
    """Build a word from whitespace-separated tokens like 'a b^-1 a^2'."""
    letters = []
    for tok in text.split():
        if "^" in tok:
            gen, _, exp = tok.partition("^")
            n = int(exp)
        else:
            gen, n = tok, 1
        if not gen:
            raise ValueError(f"bad token {tok!r}")
        sign = 1 if n >= 0 else -1
        letters.extend([(gen, sign)] * abs(n))
    return tuple(letters)


def format_word(w: Word) -> str:
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w)


def inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[Letter] = []
    for let in w:
        if out and out[-1][0] == let[0] and out[-1][1] == -let[1]:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    """Freely reduce, then strip cancelling first/last letters."""
    r = list(free_reduce(w))
    while len(r) >= 2 and r[0][0] == r[-1][0] and r[0][1] == -r[-1][1]:
        r = r[1:-1]
        r = list(free_reduce(tuple(r)))
    return tuple(r)


def cyclic_rotations(w: Word):
    for i in range(max(1, len(w))):
        yield w[i:] + w[:i]


def cyclically_equivalent(u: Word, v: Word) -> bool:
    """Equality of relators up to cyclic rotation and inversion."""
    u = cyclic_reduce(u)
    v = cyclic_reduce(v)
    if len(u) != len(v):
        return False
    rots = set(cyclic_rotations(v))
    return u in rots or inverse(u) in rots


def tilde_pair(w: Word) -> tuple[Word, Word]:
    """Rewrite w's letter sequence with alternating exponents.

    The first output starts with +1, the second with -1; original
    exponents are discarded.  Both outputs are freely reduced.
    """
    if not w:
        raise EmptyWordError("tilde transform of the empty word")
    plus = tuple((g, 1 if i % 2 == 0 else -1) for i, (g, _) in enumerate(w))
    minus = tuple((g, -e) for g, e in plus)
    return free_reduce(plus), free_reduce(minus)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation; relators are freely and cyclically reduced."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __init__(self, generators, relators=()):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator symbols")
        rels = []
        for r in relators:
            r = cyclic_reduce(tuple(r))
            for g, e in r:
                if g not in gens:
                    raise UnknownGeneratorError(f"relator letter {g!r} not a generator")
                if e not in (1, -1):
                    raise ValueError("exponents must be +-1")
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    def __str__(self):
        return format_presentation(self)


@dataclass(frozen=True)
class Parity:
    """The homomorphism to Z/2 sending every generator to the nontrivial element."""

    generators: tuple[str, ...]


@dataclass(frozen=True)
class OddRelator:
    """Failure witness for parity_check: a relator of odd length."""

    relator: Word


def parity_check(p: Presentation) -> Parity | OddRelator:
    for r in p.relators:
        if len(r) % 2 != 0:
            return OddRelator(r)
    return Parity(p.generators)


def core_functor(p: Presentation) -> Presentation:
    """Presentation of the core of (G, S, all-nontrivial parity).

    Replaces each relator by its two alternating-exponent rewrites;
    freely trivial results are dropped, literal duplicates merged.
    """
    check = parity_check(p)
    if isinstance(check, OddRelator):
        raise OddRelatorError(f"odd relator {format_word(check.relator)!r}")
    out: list[Word] = []
    for r in p.relators:
        if not r:
            continue
        for t in tilde_pair(r):
            t = cyclic_reduce(t)
            if t and t not in out:
                out.append(t)
    return Presentation(p.generators, out)


def _alternating_start(r: Word) -> Word:
    """Rotate a relator into the form s1 s2^-1 ... s(2k-1) s(2k)^-1.

    The exponents must strictly alternate around the cycle; raises
    NotAlternatingError otherwise.
    """
    if not r:
        return r
    n = len(r)
    if n % 2 != 0:
        raise NotAlternatingError(f"odd relator {format_word(r)!r}")
    for i in range(n):
        if r[i][1] != -r[(i + 1) % n][1]:
            raise NotAlternatingError(f"relator {format_word(r)!r} is not alternating")
    return r if r[0][1] == 1 else r[1:] + r[:1]


def split_free_factor(p: Presentation, s0: str) -> Presentation:
    """Rewrite p over {s0} and the differences s' = s s0^-1.

    Every relator must be cyclically alternating; the output relators
    avoid s0 entirely, so s0 generates a free Z factor of the same group.
    """
    if s0 not in p.generators:
        raise UnknownGeneratorError(f"unknown generator {s0!r}")
    primed = {g: g + "'" for g in p.generators if g != s0}
    new_rels = []
    for r in p.relators:
        if not r:
            continue
        r = _alternating_start(r)
        out = tuple((primed[g], e) for g, e in r if g != s0)
        out = cyclic_reduce(out)
        if out:
            new_rels.append(out)
    gens = (s0,) + tuple(primed[g] for g in p.generators if g != s0)
    return Presentation(gens, new_rels)


def free_product(p1: Presentation, p2: Presentation) -> Presentation:
    """Disjoint generator union (renaming p2's clashes) and all relators."""
    taken = set(p1.generators)
    rename = {}
    for g in p2.generators:
        name = g
        while name in taken:
            name += "'"
        rename[g] = name
        taken.add(name)
    rels2 = [tuple((rename[g], e) for g, e in r) for r in p2.relators]
    return Presentation(p1.generators + tuple(rename[g] for g in p2.generators),
                        list(p1.relators) + rels2)


def _substitute(r: Word, gen: str, repl: Word) -> Word:
    out: list[Letter] = []
    for g, e in r:
        if g == gen:
            out.extend(repl if e == 1 else inverse(repl))
        else:
            out.append((g, e))
    return cyclic_reduce(tuple(out))


def _dedupe(rels: list[Word]) -> list[Word]:
    out: list[Word] = []
    for r in rels:
        if r and not any(cyclically_equivalent(r, s) for s in out):
            out.append(r)
    return out


def _eliminate_once(gens: list[str], rels: list[Word]):
    """Remove one generator occurring exactly once in some relator.

    Scans relators shortest-first and prefers dropping the latest-named
    generator, which keeps earlier generators stable.  Returns True if a
    generator was eliminated.
    """
    for r in sorted(rels, key=lambda r: (len(r), r)):
        counts: dict[str, int] = {}
        for g, _ in r:
            counts[g] = counts.get(g, 0) + 1
        once = [i for i, (g, _) in enumerate(r) if counts[g] == 1]
        if not once:
            continue
        idx = max(once, key=lambda i: gens.index(r[i][0]))
        g, e = r[idx]
        # r = u g^e v  =>  g^e = u^-1 v^-1, g = (u^-1 v^-1)^e
        u, v = r[:idx], r[idx + 1:]
        repl = free_reduce(inverse(u) + inverse(v))
        if e == -1:
            repl = inverse(repl)
        rels.remove(r)
        gens.remove(g)
        rels[:] = [_substitute(s, g, repl) for s in rels]
        return True
    return False


def _rewrite_pairs(rels: list[Word]) -> bool:
    """Shorten a relator using a long overlap with another (one step)."""
    for a, b in itertools.permutations(range(len(rels)), 2):
        ra, rb = rels[a], rels[b]
        if not ra or len(ra) > len(rb):
            continue
        for rot in cyclic_rotations(ra):
            for piece in (rot, inverse(rot)):
                # replace a majority piece of ra by the shorter complement
                k = len(piece) // 2 + 1
                head, tail = piece[:k], piece[k:]
                for at in range(len(rb) - k + 1):
                    if rb[at:at + k] == head:
                        new = cyclic_reduce(rb[:at] + inverse(tail) + rb[at + k:])
                        if len(new) < len(rb):
                            rels[b] = new
                            return True
    return False


def tietze_simplify(p: Presentation, effort: int = 24) -> Presentation:
    """Best-effort presentation cleanup; presents an isomorphic group.

    Applies free/cyclic reduction, duplicate and trivial relator removal,
    substitution-elimination of generators occurring exactly once in some
    relator, and bounded relator-against-relator rewriting.  Deterministic
    for a fixed effort bound; makes no canonical-form promise.
    """
    gens = list(p.generators)
    rels = _dedupe([r for r in p.relators if r])
    for _ in range(max(0, effort)):
        rels = _dedupe(rels)
        if _eliminate_once(gens, rels):
            continue
        if _rewrite_pairs(rels):
            continue
        break
    rels = _dedupe(rels)
    return Presentation(gens, rels)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix over {1,2,3,...} with None standing for infinity."""

    entries: tuple[tuple[int | None, ...], ...]

    def __init__(self, entries):
        m = tuple(tuple(row) for row in entries)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValueError("matrix must be square")
            if m[i][i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix must be symmetric")
                if i != j and m[i][j] is not None and m[i][j] <= 1:
                    raise ValueError("off-diagonal entries must exceed 1")
        object.__setattr__(self, "entries", m)

    @property
    def n(self):
        return len(self.entries)


def coxeter_presentation(m: CoxeterMatrix) -> Presentation:
    """Generators s1..sn with relators (si sj)^mij for finite mij."""
    gens = tuple(f"s{i + 1}" for i in range(m.n))
    rels = []
    for i in range(m.n):
        for j in range(i, m.n):
            mij = m.entries[i][j]
            if mij is None:
                continue
            rels.append(((gens[i], 1), (gens[j], 1)) * mij)
    return Presentation(gens, rels)


def braid_presentation(n: int) -> Presentation:
    """The standard presentation of the braid group on n strands."""
    if n < 2:
        raise ValueError("need at least 2 strands")
    gens = tuple(f"b{i + 1}" for i in range(n - 1))
    rels = []
    for i in range(n - 2):
        a, b = gens[i], gens[i + 1]
        rels.append(word(f"{a} {b} {a} {b}^-1 {a}^-1 {b}^-1"))
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i > 1:
            a, b = gens[i], gens[j]
            rels.append(word(f"{a} {b} {a}^-1 {b}^-1"))
    return Presentation(gens, rels)


def parse_presentation(text: str) -> Presentation:
    """Parse the line format 'gens: a b c' / 'rel: a b^-1 ...'."""
    gens: tuple[str, ...] | None = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            if gens is not None:
                raise ValueError(f"line {lineno}: repeated gens line")
            gens = tuple(line[len("gens:"):].split())
        elif line.startswith("rel:"):
            rels.append(word(line[len("rel:"):]))
        else:
            raise ValueError(f"line {lineno}: expected 'gens:' or 'rel:'")
    if gens is None:
        raise ValueError("missing gens line")
    return Presentation(gens, rels)


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators) if p.generators else "gens:"]
    for r in p.relators:
        lines.append(("rel: " + format_word(r)) if r else "rel:")
    return "\n".join(lines) + "\n"
