"""Square matrices with entries in Q(t^(1/d))."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd
from typing import Iterable, Sequence

from .valfield import INF, ExtRat, ValuedScalar, parse_scalar, valuation

__all__ = ["ValuedMatrix", "SingularMatrixError"]


class SingularMatrixError(ValueError):
    """The matrix is not invertible."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class ValuedMatrix:
    """An n x n matrix of ValuedScalar entries sharing one denominator d."""

    entries: tuple[tuple[ValuedScalar, ...], ...]

    def __post_init__(self):
        rows = self.entries
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        d = 1
        for r in rows:
            for x in r:
                d = _lcm(d, x.d)
        fixed = tuple(tuple(x.rebase(d) for x in r) for r in rows)
        object.__setattr__(self, "entries", fixed)
        object.__setattr__(self, "d", d)

    # ---- constructors ------------------------------------------------------
    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "ValuedMatrix":
        """From ValuedScalars, rationals, or strings in the scalar grammar."""
        rows = [list(r) for r in rows]
        d = 1
        for r in rows:
            for x in r:
                if isinstance(x, ValuedScalar):
                    d = _lcm(d, x.d)
        return cls(tuple(tuple(_coerce(x, d) for x in r) for r in rows))

    @classmethod
    def parse(cls, rows: Iterable[Iterable[str]], d: int = 1) -> "ValuedMatrix":
        return cls(tuple(tuple(parse_scalar(str(x), d) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int, d: int = 1) -> "ValuedMatrix":
        return cls(tuple(tuple(ValuedScalar.const(int(i == j), d) for j in range(n)) for i in range(n)))

    @classmethod
    def t_diagonal(cls, lam: Sequence, d: int | None = None) -> "ValuedMatrix":
        """diag(t^lam_1, ..., t^lam_n)."""
        lam = [Fraction(x) for x in lam]
        if d is None:
            d = 1
            for x in lam:
                d = _lcm(d, x.denominator)
        n = len(lam)
        zero = ValuedScalar.zero(d)
        return cls(tuple(tuple(ValuedScalar.t_power(lam[i], d) if i == j else zero for j in range(n))
                         for i in range(n)))

    # ---- views -------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[ValuedScalar]]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "entries": self.to_strings()}

    def valuations(self) -> list[list[ExtRat]]:
        return [[valuation(x) for x in r] for r in self.entries]

    # ---- algebra -----------------------------------------------------------
    def __matmul__(self, other: "ValuedMatrix") -> "ValuedMatrix":
        n = self.n
        if other.n != n:
            raise ValueError("size mismatch")
        d = _lcm(self.d, other.d)
        zero = ValuedScalar.zero(d)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero and not b.is_zero:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return ValuedMatrix(tuple(out))

    def __eq__(self, other):
        if not isinstance(other, ValuedMatrix):
            return NotImplemented
        return self.n == other.n and all(a == b for ra, rb in zip(self.entries, other.entries)
                                         for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(self.entries)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> ValuedScalar:
        """Determinant of the submatrix, by the Leibniz expansion."""
        k = len(rows)
        total = ValuedScalar.zero(self.d)
        for p in permutations(range(k)):
            term = ValuedScalar.const(_perm_sign(p), self.d)
            for i in range(k):
                x = self.entries[rows[i]][cols[p[i]]]
                if x.is_zero:
                    break
                term = term * x
            else:
                total = total + term
        return total

    def det(self) -> ValuedScalar:
        if self.n <= 5:
            return self.minor(range(self.n), range(self.n))
        return _det_gauss(self)

    def minors(self, k: int) -> Iterable[ValuedScalar]:
        for rows in combinations(range(self.n), k):
            for cols in combinations(range(self.n), k):
                yield self.minor(rows, cols)

    def is_integral(self) -> bool:
        return all(x.is_zero or x.valuation() >= 0 for r in self.entries for x in r)

    def is_integral_unit(self) -> bool:
        """All entries in the valuation ring and a unit determinant (a point of GL_n(O))."""
        return self.is_integral() and self.det().valuation() == 0

    def block_embed(self, n: int) -> "ValuedMatrix":
        """diag(self, identity) of size n."""
        m = self.n
        if m > n:
            raise ValueError("block embedding needs m <= n")
        rows = []
        for i in range(n):
            rows.append(tuple(self.entries[i][j] if i < m and j < m else
                              ValuedScalar.const(int(i == j), self.d) for j in range(n)))
        return ValuedMatrix(tuple(rows))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"


def _coerce(x, d: int) -> ValuedScalar:
    if isinstance(x, ValuedScalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x, d)
    return ValuedScalar.const(Fraction(x), d)


def _det_gauss(m: ValuedMatrix) -> ValuedScalar:
    a = m.rows()
    n = len(a)
    det = ValuedScalar.const(1, m.d)
    for c in range(n):
        p = next((i for i in range(c, n) if not a[i][c].is_zero), None)
        if p is None:
            return ValuedScalar.zero(m.d)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = det * a[c][c]
        for i in range(c + 1, n):
            if not a[i][c].is_zero:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def min_valuation(values: Iterable[ValuedScalar]) -> ExtRat:
    return min((valuation(x) for x in values), default=INF)
