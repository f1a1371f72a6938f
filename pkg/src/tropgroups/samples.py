"""Seeded random instances for self-checks and tests."""
from __future__ import annotations

import random
from fractions import Fraction

from . import _linalg as la
from .polyhedra import Cone
from .valfield import ValuedScalar
from .valmatrix import ValuedMatrix


def rational(rng: random.Random, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def rational_matrix(n: int, rng: random.Random, bound: int = 4) -> list[list[Fraction]]:
    """A random invertible rational matrix."""
    while True:
        g = [[rational(rng, bound, 3) for _ in range(n)] for _ in range(n)]
        if la.det(g) != 0:
            return g


def weights(n: int, rng: random.Random, bound: int = 4, max_den: int = 4) -> list[Fraction]:
    return [rational(rng, bound, max_den) for _ in range(n)]


def laurent(rng: random.Random, d: int = 2, lo: int = -2, hi: int = 4, terms: int = 3) -> ValuedScalar:
    """A random Laurent polynomial in t^(1/d) with exponents in [lo, hi] / d."""
    k = rng.randint(1, terms)
    exps = rng.sample(range(lo, hi + 1), k)
    return ValuedScalar.from_terms({Fraction(e, d): rng.choice([-3, -2, -1, 1, 2, 3]) for e in exps}, d)


def integral(rng: random.Random, d: int = 2, hi: int = 4) -> ValuedScalar:
    """A random element of the valuation ring (possibly zero)."""
    if rng.random() < 0.25:
        return ValuedScalar.zero(d)
    return laurent(rng, d, 0, hi, 2)


def valued_matrix(n: int, rng: random.Random, d: int = 2) -> ValuedMatrix:
    """A random invertible matrix of Laurent polynomials in t^(1/d)."""
    while True:
        m = ValuedMatrix(tuple(tuple(laurent(rng, d) if rng.random() < 0.85 else ValuedScalar.zero(d)
                                     for _ in range(n)) for _ in range(n)))
        if not m.det().is_zero:
            return m


def integral_unit(n: int, rng: random.Random, d: int = 2) -> ValuedMatrix:
    """A random point of GL_n(O): permutation * lower * diagonal units * upper."""
    one, zero = ValuedScalar.const(1, d), ValuedScalar.zero(d)
    lower = [[integral(rng, d) if i > j else (one if i == j else zero) for j in range(n)] for i in range(n)]
    upper = [[integral(rng, d) if i < j else zero for j in range(n)] for i in range(n)]
    for i in range(n):
        c = ValuedScalar.const(rng.choice([-2, -1, 1, 2, 3]), d)
        upper[i][i] = c + ValuedScalar.t_power(Fraction(rng.randint(1, 3), d), d) * rng.randint(0, 2)
    perm = list(range(n))
    rng.shuffle(perm)
    p = [[one if perm[i] == j else zero for j in range(n)] for i in range(n)]
    return ValuedMatrix.of(p) @ ValuedMatrix.of(lower) @ ValuedMatrix.of(upper)


def strictly_convex_cone(rank: int, rng: random.Random, nrays: int | None = None, bound: int = 3) -> Cone:
    """A random full-dimensional strictly convex cone: rays on the positive side of a functional."""
    w = [rng.randint(1, 3) for _ in range(rank)]
    nrays = nrays or rng.randint(rank, rank + 2)
    while True:
        rays = []
        while len(rays) < nrays:
            v = tuple(rng.randint(-bound, bound) for _ in range(rank))
            if la.dot(w, v) > 0:
                rays.append(v)
        if la.rank(rays) == rank:
            return Cone(rays)
