"""Integer linear algebra: Smith normal form, cokernels, sublattices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from . import _linalg as la

__all__ = [
    "Lattice",
    "FiniteAbelianGroup",
    "smith_normal_form",
    "cokernel",
    "is_unimodular_subset",
    "lattice_basis",
    "same_lattice",
    "quotient_map",
    "saturated_kernel",
]

IntMatrix = list


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ A @ V == D.

    U and V are unimodular, D is diagonal with d_1 | d_2 | ... and d_i >= 0.
    Pivots are chosen as the entry of smallest absolute value in the remaining
    block, ties broken by (row, column), so the output is reproducible.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [[int(x) for x in row] for row in a]
    U = la.identity(m)
    V = la.identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            p = A[k][k]
            dirty = False
            for i in range(k + 1, m):
                if A[i][k]:
                    add_row(i, k, -(A[i][k] // p))
                    dirty |= A[i][k] != 0
            for j in range(k + 1, n):
                if A[k][j]:
                    add_col(j, k, -(A[k][j] // p))
                    dirty |= A[k][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(k, bad[0], 1)
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
    return U, A, V


def _diagonal(d: IntMatrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_s with d_1 | ... | d_s and every d_i >= 2."""

    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        inv = self.invariants
        if any(x < 2 for x in inv) or any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"not an invariant factor chain: {inv}")

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.invariants, 1)

    @property
    def is_trivial(self) -> bool:
        return not self.invariants

    def __str__(self):
        return " x ".join(f"Z/{d}" for d in self.invariants) or "0"


def cokernel(f: Sequence[Sequence[int]]) -> FiniteAbelianGroup:
    """The finite group Z^n / f(Z^n) of a square nonsingular integer matrix."""
    n = len(f)
    if any(len(row) != n for row in f):
        raise ValueError("cokernel needs a square matrix (finite index)")
    if la.det(f) == 0:
        raise ValueError("singular map: the cokernel is not finite")
    _, D, _ = smith_normal_form(f)
    return FiniteAbelianGroup(tuple(x for x in _diagonal(D) if x != 1))


@dataclass(frozen=True)
class Lattice:
    """A free abelian group of the given rank.

    Without ``basis`` the lattice is Z^rank in its own coordinates; with
    ``basis`` (rank vectors of length ambient_rank) it is the sublattice they
    span, and vectors handed to methods are in ambient coordinates.
    """

    rank: int
    basis: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.basis is not None:
            if len(self.basis) != self.rank or la.rank(self.basis) != self.rank:
                raise ValueError("basis must consist of `rank` independent vectors")

    @classmethod
    def standard(cls, r: int) -> "Lattice":
        return cls(r)

    @property
    def ambient_rank(self) -> int:
        return len(self.basis[0]) if self.basis else self.rank

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates in the lattice basis (rational if v is not a lattice point)."""
        if self.basis is None:
            return tuple(Fraction(x) for x in v)
        c = la.solve(la.transpose(self.basis), v)
        if c is None:
            raise ValueError(f"{tuple(v)} is not in the span of the lattice")
        return c

    def __contains__(self, v) -> bool:
        try:
            return all(x.denominator == 1 for x in self.coordinates(v))
        except ValueError:
            return False

    def to_ambient(self, c: Sequence) -> tuple:
        if self.basis is None:
            return tuple(c)
        return tuple(sum(ci * b[i] for ci, b in zip(c, self.basis)) for i in range(self.ambient_rank))


def is_unimodular_subset(vectors: Sequence[Sequence], lattice: Lattice | None = None) -> bool:
    """True iff the (independent) vectors extend to a Z-basis of the lattice."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return True
    if lattice is None:
        lattice = Lattice(len(vectors[0]))
    coords = [lattice.coordinates(v) for v in vectors]
    if la.rank(coords) != len(coords):
        raise ValueError("vectors are linearly dependent")
    if any(x.denominator != 1 for c in coords for x in c):
        return False
    cols = la.transpose([[int(x) for x in c] for c in coords])
    _, D, _ = smith_normal_form(cols)
    return all(x == 1 for x in _diagonal(D))


def _integerize(vectors: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    fr = [[Fraction(x) for x in v] for v in vectors]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for v in fr for x in v), 1)
    return [[int(x * den) for x in v] for v in fr], den


def lattice_basis(generators: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """A basis of the subgroup of Q^n generated by finitely many rational vectors."""
    gens = [g for g in generators if not la.is_zero(g)]
    if not gens:
        return []
    ints, den = _integerize(gens)
    cols = la.transpose(ints)
    _, D, V = smith_normal_form(cols)
    r = sum(1 for x in _diagonal(D) if x != 0)
    av = la.matmul(cols, V)
    return [tuple(Fraction(av[i][j], den) for i in range(len(cols))) for j in range(r)]


def _in_lattice(v, basis) -> bool:
    if not basis:
        return la.is_zero(v)
    c = la.solve(la.transpose(basis), v)
    return c is not None and all(x.denominator == 1 for x in c)


def same_lattice(gens1: Sequence[Sequence], gens2: Sequence[Sequence]) -> bool:
    """Whether two finite sets of rational vectors generate the same subgroup."""
    b1, b2 = lattice_basis(gens1), lattice_basis(gens2)
    return len(b1) == len(b2) and all(_in_lattice(v, b2) for v in b1) and all(_in_lattice(v, b1) for v in b2)


def quotient_map(vectors: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    """Integer matrix P (rows) with Z^n -> Z^(n-k) surjective and kernel Z^n ∩ span(vectors).

    The rows of P also form a basis of the annihilator lattice of span(vectors).
    """
    vectors = [v for v in vectors if not la.is_zero(v)]
    if not vectors:
        return [tuple(row) for row in la.identity(n)]
    ints, _ = _integerize(vectors)
    cols = la.transpose(ints)
    U, D, _ = smith_normal_form(cols)
    k = sum(1 for x in _diagonal(D) if x != 0)
    return [tuple(U[i]) for i in range(k, n)]


def saturated_kernel(rows: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : rows . x = 0}."""
    rows = [r for r in rows if not la.is_zero(r)]
    if not rows:
        return [tuple(r) for r in la.identity(n)]
    # the kernel is the annihilator of the row span
    return quotient_map(rows, n)
