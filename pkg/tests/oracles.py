"""Brute-force reference computations, independent of the library code paths."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd


def int_det(m) -> int:
    """Leibniz expansion."""
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= m[i][p[i]]
        total += -prod if inv % 2 else prod
    return total


def invariant_factors_by_minors(a) -> list[int]:
    """d_k = g_k / g_{k-1} where g_k is the gcd of all k x k minors."""
    rows, cols = len(a), len(a[0])
    g_prev, out = 1, []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = gcd(g, int_det([[a[i][j] for j in c] for i in r]))
        if g == 0:
            out += [0] * (min(rows, cols) - k + 1)
            break
        out.append(g // g_prev)
        g_prev = g
    return out


def in_halfspaces(x, rays) -> bool:
    """Whether <r, x> >= 0 for all r (membership in the dual of cone(rays))."""
    return all(sum(a * b for a, b in zip(r, x)) >= 0 for r in rays)


def box_points(rank: int, bound: int):
    return itertools.product(range(-bound, bound + 1), repeat=rank)


def dual_monoid_box(rays, rank: int, bound: int) -> list[tuple[int, ...]]:
    """All lattice points of the dual cone of cone(rays) with |coordinates| <= bound."""
    return [x for x in box_points(rank, bound) if in_halfspaces(x, rays)]


def representable(points, basis, rays) -> list[tuple[int, ...]]:
    """Points of the (pointed) dual monoid that are not N-combinations of ``basis``.

    Recursion subtracts basis elements while staying in the monoid; a height
    functional strictly positive on the monoid guarantees termination.
    """
    rank = len(basis[0]) if basis else 0
    height = [sum(r[i] for r in rays) for i in range(rank)]

    @lru_cache(maxsize=None)
    def ok(x):
        if not any(x):
            return True
        for h in basis:
            y = tuple(a - b for a, b in zip(x, h))
            if in_halfspaces(y, rays) and sum(a * b for a, b in zip(height, y)) < sum(
                    a * b for a, b in zip(height, x)) and ok(y):
                return True
        return False

    return [p for p in points if not ok(tuple(p))]


def cone_contains(rays, lineality, x) -> bool:
    """Membership of a rational point in cone(rays) + span(lineality) by exact LP-free search.

    Uses Caratheodory: x lies in the cone iff it lies in the cone of some
    linearly independent subset of generators (lineality counted with both signs).
    """
    gens = list(rays) + list(lineality) + [tuple(-v for v in l) for l in lineality]
    n = len(x)
    if not any(x):
        return True
    for k in range(1, n + 1):
        for sub in itertools.combinations(gens, k):
            sol = _solve_exact([list(col) for col in zip(*sub)], list(x))
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def _solve_exact(a, b):
    """Unique solution of a c = b (a is n x k with independent columns), else None."""
    n, k = len(a), len(a[0])
    m = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    r = 0
    piv = []
    for c in range(k):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if any(m[i][k] != 0 for i in range(r, n)):
        return None
    return [m[i][k] for i in range(k)]


def gcd_list(xs) -> int:
    return reduce(gcd, (abs(x) for x in xs), 0)
