"""Exact rational linear algebra on lists of Fractions.

Vectors are tuples, matrices are lists of row lists. Nothing here knows about
lattices or cones; it is the shared substrate for those modules.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def as_fraction_matrix(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (rref rows without zero rows, pivot columns)."""
    m = as_fraction_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows . x = 0} in Q^ncols."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    rref, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rref, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution x of a.x = b, or None when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rref, pivots = row_reduce(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(rref, pivots):
        x[p] = row[n]
    return tuple(x)


def det(a: Sequence[Sequence]) -> Fraction:
    m = as_fraction_matrix(a)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rref]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple direction of a nonzero rational vector."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def project_orthogonal(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    # Gram system: find c with B^T B c = B^T v, then v - B c.
    gram = [[dot(b1, b2) for b2 in basis] for b1 in basis]
    rhs = [dot(b, v) for b in basis]
    c = solve(gram, rhs)
    assert c is not None
    return tuple(Fraction(x) - sum(ci * b[i] for ci, b in zip(c, basis))
                 for i, x in enumerate(v))
