"""Cartan decomposition over Q(t^(1/d)) and spherical tropicalization of GL_n.

Two independent routes give the tropicalization of an invertible matrix:
elimination over the valuation ring (``cartan_decompose``) and the minima
of minor valuations (``trop_spherical``). Tests and the CLI compare them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .building import pi, trop_build
from .valfield import ValuedScalar, valuation
from .valmatrix import SingularMatrixError, ValuedMatrix, min_valuation

__all__ = [
    "CartanForm",
    "cartan_decompose",
    "trop_spherical",
    "theorem_d_check",
    "functoriality_check",
    "DiagramReport",
    "FunctorialityReport",
]


@dataclass(frozen=True)
class CartanForm:
    """x = g * diag(t^lam) * h with g, h integral-unit and lam descending."""

    g: ValuedMatrix
    lam: tuple[Fraction, ...]
    h: ValuedMatrix

    def reconstruct(self) -> ValuedMatrix:
        return self.g @ ValuedMatrix.t_diagonal(self.lam, self.g.d) @ self.h


def _require_invertible(x: ValuedMatrix) -> ValuedScalar:
    det = x.det()
    if det.is_zero:
        raise SingularMatrixError("matrix is singular")
    return det


def cartan_decompose(x: ValuedMatrix) -> CartanForm:
    """Smith elimination over the valuation ring.

    At each step the remaining block's entry of least valuation (ties broken
    by lowest (row, column)) becomes the pivot; its row and column are cleared
    with multipliers of valuation >= 0. The inverse operations are collected
    into g (columns) and h (rows) so that x = g * A * h holds throughout.
    """
    _require_invertible(x)
    n, d = x.n, x.d
    A = x.rows()
    g = ValuedMatrix.identity(n, d).rows()
    h = ValuedMatrix.identity(n, d).rows()
    for k in range(n):
        best, bi, bj = None, k, k
        for i in range(k, n):
            for j in range(k, n):
                v = valuation(A[i][j])
                if best is None or v < best:
                    best, bi, bj = v, i, j
        # row swap on A is a column swap on g; column swap on A is a row swap on h
        A[k], A[bi] = A[bi], A[k]
        for row in g:
            row[k], row[bi] = row[bi], row[k]
        for row in A:
            row[k], row[bj] = row[bj], row[k]
        h[k], h[bj] = h[bj], h[k]
        p = A[k][k]
        for i in range(k + 1, n):
            if A[i][k].is_zero:
                continue
            c = A[i][k] / p
            A[i] = [a - c * b for a, b in zip(A[i], A[k])]
            for row in g:  # g <- g * (I + c e_ik)
                row[k] = row[k] + c * row[i]
        for j in range(k + 1, n):
            if A[k][j].is_zero:
                continue
            c = A[k][j] / p
            for row in A:
                row[j] = row[j] - c * row[k]
            h[k] = [a + c * b for a, b in zip(h[k], h[j])]  # h <- (I + c e_kj) h
    # split each pivot into t^v * unit and push the unit into h
    vals = []
    for i in range(n):
        v = A[i][i].valuation().value
        unit = A[i][i] / ValuedScalar.t_power(v, d)
        h[i] = [unit * a for a in h[i]]
        vals.append(v)
    order = sorted(range(n), key=lambda i: (-vals[i], i))
    g_sorted = [[row[i] for i in order] for row in g]
    h_sorted = [h[i] for i in order]
    return CartanForm(ValuedMatrix.of(g_sorted), tuple(vals[i] for i in order), ValuedMatrix.of(h_sorted))


def trop_spherical(x: ValuedMatrix) -> tuple[Fraction, ...]:
    """Descending valuations of the invariant factors, via minima of minor valuations."""
    _require_invertible(x)
    m = [Fraction(0)]
    for k in range(1, x.n + 1):
        m.append(min_valuation(x.minors(k)).value)
    ascending = [m[i] - m[i - 1] for i in range(1, x.n + 1)]
    return tuple(reversed(ascending))


@dataclass(frozen=True)
class DiagramReport:
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]
    x: ValuedMatrix

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def theorem_d_check(g: Sequence[Sequence], lam: Sequence, h: ValuedMatrix) -> DiagramReport:
    """Compare pi(trop_build(g, lam, h)) with trop_spherical(g * diag(t^lam) * h)."""
    point = trop_build(g, lam, h)
    lam = point.lam
    d = lcm(h.d, *(v.denominator for v in lam))
    x = ValuedMatrix.of(point.g) @ ValuedMatrix.t_diagonal(lam, d) @ h
    return DiagramReport(pi(point), trop_spherical(x), x)


@dataclass(frozen=True)
class FunctorialityReport:
    kind: str
    lhs: tuple
    rhs: tuple

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def functoriality_check(x: ValuedMatrix, xi: str = "det", n: int | None = None) -> FunctorialityReport:
    """Check trop(xi) o pi = pi o xi for xi = "det" (GL(n) -> GL(1)) or "block" (GL(m) -> GL(n)).

    For the determinant, the induced map on chambers is lam -> sum(lam). For
    the block embedding diag(x, 1), it appends zeros and re-sorts.
    """
    lam = trop_spherical(x)
    if xi == "det":
        return FunctorialityReport("det", (sum(lam, Fraction(0)),), (valuation(x.det()).value,))
    if xi == "block":
        if n is None or n < x.n:
            raise ValueError("block embedding needs a target size n >= m")
        image = tuple(sorted(lam + (Fraction(0),) * (n - x.n), reverse=True))
        return FunctorialityReport("block", image, trop_spherical(x.block_embed(n)))
    raise ValueError(f"unknown homomorphism {xi!r}; use 'det' or 'block'")
