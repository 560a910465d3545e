"""Exact integer linear algebra: Smith normal form and abelianizations.

Everything works over Python's arbitrary-precision integers; matrices
are plain lists of lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation

IntMatrix = list[list[int]]


def smith_normal_form(m: IntMatrix) -> tuple[list[int], int]:
    """Invariant factors of an integer matrix.

    Returns (divisors, rank) where divisors is the chain d1 | d2 | ...
    of nonzero invariant factors (1s included) and rank is its length.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors = []
    top = 0
    while True:
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            # clear the pivot column
            done = True
            for i in range(top + 1, rows):
                if a[i][top]:
                    q = a[i][top] // a[top][top]
                    for j in range(top, cols):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        done = False
            if not done:
                continue
            # clear the pivot row
            for j in range(top + 1, cols):
                if a[top][j]:
                    q = a[top][j] // a[top][top]
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        done = False
            if done:
                break
        # make the pivot divide every remaining entry
        fixed = True
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % a[top][top]:
                    for k in range(top, cols):
                        a[top][k] += a[i][k]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        divisors.append(abs(a[top][top]))
        top += 1
    return divisors, len(divisors)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    divisors is the torsion chain d1 | d2 | ... with every di >= 2.
    """

    free_rank: int
    divisors: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.divisors):
            if d < 2:
                raise ValueError("torsion divisors must be >= 2")
            if i and d % self.divisors[i - 1]:
                raise ValueError("divisors must form a chain")

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.divisors)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix, cols: int) -> AbelianGroup:
    """Z^cols modulo the row span of m."""
    divisors, rank = smith_normal_form(m) if m else ([], 0)
    return AbelianGroup(cols - rank, tuple(d for d in divisors if d > 1))


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r:
            row[index[g]] += e
        rows.append(row)
    return rows


def abelianize(p: Presentation) -> AbelianGroup:
    return cokernel(relation_matrix(p), len(p.generators))


def mod2_rank(a: AbelianGroup) -> int:
    """Dimension of A/2A over the field with two elements."""
    return a.free_rank + sum(1 for d in a.divisors if d % 2 == 0)


def torsion_divisors(a: AbelianGroup) -> list[int]:
    return list(a.divisors)


def direct_sum(*groups: AbelianGroup) -> AbelianGroup:
    """Direct sum, renormalized to invariant-factor form."""
    free = sum(g.free_rank for g in groups)
    tors = [d for g in groups for d in g.divisors]
    diag = [[tors[i] if i == j else 0 for j in range(len(tors))]
            for i in range(len(tors))]
    divisors, _ = smith_normal_form(diag) if tors else ([], 0)
    return AbelianGroup(free, tuple(d for d in divisors if d > 1))


def Z(rank: int = 1, *divisors: int) -> AbelianGroup:
    """Shorthand constructor: Z(r, d1, d2, ...)."""
    diag = [[d if i == j else 0 for j in range(len(divisors))]
            for i, d in enumerate(divisors)]
    ds, _ = smith_normal_form(diag) if divisors else ([], 0)
    return AbelianGroup(rank, tuple(d for d in ds if d > 1))
