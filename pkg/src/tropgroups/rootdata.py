"""Root data, Weyl groups, Weyl chambers and the Weyl fan.

A root datum lives in coordinates: M = N = Z^r with an integer pairing
matrix P, so that <n, m> = n^T P m. Builtin type A data also remember how
their N-coordinates sit in the ambient Z^n, which is what the building and
CLI layers use to talk about (lambda_1, ..., lambda_n).
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .polyhedra import DEFAULT_RANK_CAP, BudgetExceeded, Cone, Fan
from .zlattice import saturated_kernel

__all__ = [
    "RootDatum",
    "WeylGroup",
    "RootDatumViolation",
    "builtin_root_datum",
    "validate_root_datum",
    "weyl_group",
    "weyl_chamber",
    "dominant_representative",
    "apartment_intersection",
    "weyl_fan",
    "MAX_WEYL_ORDER",
]

MAX_WEYL_ORDER = 1000

IntVec = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RootDatum:
    """(M, Phi, N, Phi*) in coordinates.

    ``roots[i]`` (in M) and ``coroots[i]`` (in N) correspond. ``positive``
    lists the indices of a positive system. ``n_embedding`` (ambient x rank)
    maps N-coordinates to ambient vectors and ``n_coords`` (rank x ambient)
    goes back; both are None for data without an ambient model.
    """

    rank: int
    pairing: Matrix
    roots: tuple[IntVec, ...]
    coroots: tuple[IntVec, ...]
    positive: tuple[int, ...]
    name: str = ""
    n_embedding: tuple[tuple[Fraction, ...], ...] | None = None
    n_coords: tuple[tuple[Fraction, ...], ...] | None = None

    def pair(self, n: Sequence, m: Sequence):
        return la.dot(n, la.matvec(self.pairing, m))

    def reflect_m(self, i: int, m: Sequence) -> tuple:
        c = self.pair(self.coroots[i], m)
        return tuple(x - c * a for x, a in zip(m, self.roots[i]))

    def reflect_n(self, i: int, n: Sequence) -> tuple:
        c = self.pair(n, self.roots[i])
        return tuple(x - c * a for x, a in zip(n, self.coroots[i]))

    def root_normal(self, m: Sequence) -> tuple:
        """The vector v with v . n = <n, m> for all n."""
        return la.matvec(self.pairing, m)

    @property
    def positive_roots(self) -> list[IntVec]:
        return [self.roots[i] for i in self.positive]

    @property
    def simple(self) -> tuple[int, ...]:
        """Indices of simple roots: positive roots that are not sums of two positive roots."""
        pos = set(self.positive_roots)
        sums = {tuple(a + b for a, b in zip(p, q)) for p in pos for q in pos}
        return tuple(i for i in self.positive if self.roots[i] not in sums)

    def reflection_matrix(self, i: int) -> Matrix:
        """Matrix of s_{alpha_i} acting on N-coordinates (columns are images of basis vectors)."""
        cols = [self.reflect_n(i, e) for e in la.identity(self.rank)]
        return tuple(tuple(int(x) for x in row) for row in la.transpose(cols))

    def to_ambient(self, n: Sequence) -> tuple:
        return tuple(n) if self.n_embedding is None else la.matvec(self.n_embedding, n)

    def from_ambient(self, x: Sequence) -> tuple:
        return tuple(Fraction(v) for v in x) if self.n_coords is None else la.matvec(self.n_coords, x)

    def to_json(self) -> dict:
        out = {
            "rank_M": self.rank,
            "pairing": [list(r) for r in self.pairing],
            "roots": [list(r) for r in self.roots],
            "coroots": [list(r) for r in self.coroots],
            "bijection": [[i, i] for i in range(len(self.roots))],
            "positive": list(self.positive),
        }
        if self.name:
            out["name"] = self.name
        if self.n_embedding is not None:
            out["n_embedding"] = [[str(x) for x in r] for r in self.n_embedding]
            out["n_coords"] = [[str(x) for x in r] for r in self.n_coords]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RootDatum":
        roots = [tuple(r) for r in data["roots"]]
        coroots = [tuple(r) for r in data["coroots"]]
        order = dict(data.get("bijection", [[i, i] for i in range(len(roots))]))
        coroots = [coroots[order[i]] for i in range(len(roots))]
        positive = data.get("positive")
        if positive is None:
            positive = _default_positive(roots)
        def rat_rows(key):
            rows = data.get(key)
            return None if rows is None else tuple(tuple(Fraction(str(x)) for x in r) for r in rows)

        return cls(data["rank_M"], tuple(tuple(r) for r in data["pairing"]), tuple(roots),
                   tuple(coroots), tuple(positive), data.get("name", ""),
                   rat_rows("n_embedding"), rat_rows("n_coords"))


def _default_positive(roots):
    # lexicographically positive roots
    return [i for i, r in enumerate(roots) if next((x for x in r if x), 0) > 0]


_KIND = re.compile(r"^\s*(GL|SL|PGL)\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


def builtin_root_datum(kind: str) -> RootDatum:
    """The standard root datum of GL(n), SL(n) or PGL(n), upper triangular Borel.

    Coordinates: GL uses Z^n on both sides. SL uses the simple coroots
    e_i - e_{i+1} as a basis of N (the sum-zero lattice) and the images of
    e_1, ..., e_{n-1} in M = Z^n / Z(1, ..., 1). PGL uses N = Z^n / Z(1, ..., 1)
    with coordinates x_i - x_n and M the sum-zero characters with basis
    e_i - e_n, so its pairing is the identity.
    """
    m = _KIND.match(kind)
    if not m:
        raise ValueError(f"unknown root datum {kind!r}; expected GL(n), SL(n) or PGL(n)")
    fam, n = m.group(1).upper(), int(m.group(2))
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]

    def amb(i, j):
        v = [0] * n
        v[i], v[j] = 1, -1
        return v

    if fam == "GL":
        r = n
        P = la.identity(n)
        roots = [tuple(amb(i, j)) for i, j in pairs]
        coroots = list(roots)
        emb = coords = la.identity(n)
    elif fam == "SL":
        r = n - 1
        P = [[int(i == j) - int(i + 1 == j) for j in range(r)] for i in range(r)]
        # M coords of a character class: m_k - m_n
        roots = [tuple(x[k] - x[n - 1] for k in range(r)) for x in (amb(i, j) for i, j in pairs)]
        # N coords in the simple coroot basis: partial sums
        coroots = [tuple(sum(x[:k + 1]) for k in range(r)) for x in (amb(i, j) for i, j in pairs)]
        emb = [[int(i == k) - int(i == k + 1) for k in range(r)] for i in range(n)]
        coords = [[int(i <= k) for i in range(n)] for k in range(r)]
    else:
        r = n - 1
        P = la.identity(r)
        roots = [tuple(x[:r]) for x in (amb(i, j) for i, j in pairs)]
        coroots = [tuple(x[k] - x[n - 1] for k in range(r)) for x in (amb(i, j) for i, j in pairs)]
        emb = [[int(i == k) for k in range(r)] for i in range(n)]
        coords = [[int(i == k) - int(i == n - 1) for i in range(n)] for k in range(r)]
    positive = [idx for idx, (i, j) in enumerate(pairs) if i < j]
    frac = lambda mat: tuple(tuple(Fraction(x) for x in row) for row in mat)  # noqa: E731
    return RootDatum(r, tuple(tuple(row) for row in P), tuple(roots), tuple(coroots), tuple(positive),
                     f"{fam}({n})", frac(emb), frac(coords))


@dataclass(frozen=True)
class RootDatumViolation:
    kind: str  # "pairing", "closure" or "shape"
    index: int
    detail: str


def validate_root_datum(R: RootDatum) -> list[RootDatumViolation]:
    """Check every axiom exhaustively; an empty list certifies a root datum."""
    out = []
    if len(R.roots) != len(R.coroots):
        return [RootDatumViolation("shape", -1, "roots and coroots differ in number")]
    if abs(la.det(R.pairing)) != 1 if R.rank else False:
        out.append(RootDatumViolation("shape", -1, "pairing is not perfect"))
    roots, coroots = set(R.roots), set(R.coroots)
    for i, (a, c) in enumerate(zip(R.roots, R.coroots)):
        if R.pair(c, a) != 2:
            out.append(RootDatumViolation("pairing", i, f"<coroot, root> = {R.pair(c, a)}"))
            continue
        for j, b in enumerate(R.roots):
            img = tuple(int(x) for x in R.reflect_m(i, b))
            if img not in roots:
                out.append(RootDatumViolation("closure", i, f"s_{i} sends root {j} to {img}"))
        for j, b in enumerate(R.coroots):
            img = tuple(int(x) for x in R.reflect_n(i, b))
            if img not in coroots:
                out.append(RootDatumViolation("closure", i, f"s_{i} sends coroot {j} to {img}"))
    return out


@dataclass(frozen=True)
class WeylGroup:
    """Elements as integer matrices on N-coordinates, generated by simple reflections."""

    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, w: Matrix, x: Sequence) -> tuple:
        return la.matvec(w, x)


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in la.matmul(a, b))


def weyl_group(R: RootDatum, max_order: int = MAX_WEYL_ORDER) -> WeylGroup:
    gens = tuple(R.reflection_matrix(i) for i in (R.simple or range(len(R.roots))))
    ident = tuple(tuple(row) for row in la.identity(R.rank))
    seen = {ident: None}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = _mul(s, w)
            if v not in seen:
                seen[v] = None
                if len(seen) > max_order:
                    raise BudgetExceeded(f"Weyl group larger than {max_order}")
                queue.append(v)
    return WeylGroup(tuple(seen), gens)


def weyl_chamber(R: RootDatum) -> Cone:
    """The dominant cone {u : <u, alpha> >= 0 for alpha positive}; may have lineality."""
    normals = [R.root_normal(a) for a in R.positive_roots]
    return Cone.from_inequalities(normals, (), R.rank)


def dominant_representative(lam: Sequence, R: RootDatum) -> tuple[tuple[Fraction, ...], Matrix]:
    """(w.lam, w) with w.lam dominant, by repeatedly reflecting in a violated simple root."""
    x = tuple(Fraction(v) for v in lam)
    w = tuple(tuple(row) for row in la.identity(R.rank))
    simple = R.simple
    while True:
        bad = next((i for i in simple if R.pair(x, R.roots[i]) < 0), None)
        if bad is None:
            return x, w
        x = R.reflect_n(bad, x)
        w = _mul(R.reflection_matrix(bad), w)


def apartment_intersection(roots: Sequence[Sequence[int]], R: RootDatum) -> list[IntVec]:
    """Integer basis of {lam : <lam, alpha> = 0 for all alpha in roots}."""
    normals = [R.root_normal(a) for a in roots]
    return saturated_kernel(normals, R.rank) if R.rank else []


def center_characters(R: RootDatum) -> list[IntVec]:
    """Basis of the W-fixed characters M^W = {m : <alpha*, m> = 0 for all coroots}."""
    rows = [la.matvec(la.transpose(R.pairing), c) for c in R.coroots]
    return saturated_kernel(rows, R.rank) if R.rank else []


def weyl_fan(R: RootDatum, rank_cap: int = DEFAULT_RANK_CAP) -> Fan:
    """Fan of Weyl chambers and their faces.

    When the center is positive-dimensional the chambers contain a line, so
    they are further cut by the coordinate hyperplanes of M^W; this keeps every
    cone strictly convex (for GL(1) the line splits into two rays).
    """
    if R.rank > rank_cap:
        raise BudgetExceeded(f"rank {R.rank} exceeds the cap {rank_cap}")
    W = weyl_group(R)
    base = [R.root_normal(a) for a in R.positive_roots]
    centre = [R.root_normal(c) for c in center_characters(R)]
    cones: list[list[tuple]] = []
    seen: set[frozenset] = set()
    for signs in _sign_vectors(len(centre)):
        ineqs = base + [tuple(s * x for x in c) for s, c in zip(signs, centre)]
        chamber = Cone.from_inequalities(ineqs, (), R.rank)
        for w in W.elements:
            rays = [la.primitive(la.matvec(w, r)) for r in chamber.rays]
            key = frozenset(rays)
            if key not in seen:
                seen.add(key)
                cones.append(rays)
    return Fan.from_cones(cones, R.rank)


def _sign_vectors(k: int):
    if k == 0:
        yield ()
        return
    for rest in _sign_vectors(k - 1):
        yield rest + (1,)
        yield rest + (-1,)
