"""The type A extended affine building, modelled by Goldman–Iwahori norms.

A point is a pair (g, lam): g is an invertible rational matrix whose columns
form a frame of V, lam a rational weight vector. The attached norm, written
additively, is

    valnorm(u) = min { lam_i : a_i != 0 },  a = g^{-1} u,

because nonzero rational constants have valuation zero. Two pairs are the
same building point exactly when their norms agree, and that is decided by
evaluating each norm on the other's frame (see ``norms_equal``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _linalg as la
from .valfield import INF, ExtRat
from .valmatrix import SingularMatrixError, ValuedMatrix

__all__ = [
    "GINorm",
    "BuildingPoint",
    "NotInMaximalCompact",
    "evaluate_norm",
    "norms_equal",
    "alpha",
    "pi",
    "normalize_projective",
    "trop_build",
    "apartment_coordinates",
]

RatMatrix = tuple[tuple[Fraction, ...], ...]


class NotInMaximalCompact(ValueError):
    """The h factor is not an integral-unit matrix."""


def _rat_matrix(g: Sequence[Sequence]) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in g)


def _checked_inverse(g: RatMatrix) -> list[list[Fraction]]:
    if not g or any(len(r) != len(g) for r in g):
        raise ValueError("frame must be a square matrix")
    try:
        return la.inverse(g)
    except ZeroDivisionError:
        raise SingularMatrixError("frame matrix is singular") from None


@dataclass(frozen=True)
class GINorm:
    frame: RatMatrix
    weights: tuple[Fraction, ...]
    _inv: list = field(default=None, repr=False, compare=False, hash=False)
    _support: tuple = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        g = _rat_matrix(self.frame)
        w = tuple(Fraction(x) for x in self.weights)
        if len(w) != len(g):
            raise ValueError("weights and frame differ in size")
        object.__setattr__(self, "frame", g)
        object.__setattr__(self, "weights", w)
        inv = _checked_inverse(g)
        object.__setattr__(self, "_inv", inv)
        # rows of g^{-1} cleared of denominators, visited by increasing weight:
        # only the zero pattern of a = g^{-1} u matters
        order = sorted(range(len(w)), key=lambda i: w[i])
        rows = tuple((w[i], tuple(int(x * lcm(*(y.denominator for y in inv[i]))) for x in inv[i])) for i in order)
        object.__setattr__(self, "_support", rows)

    @property
    def n(self) -> int:
        return len(self.weights)

    def frame_vector(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.frame)


@dataclass(frozen=True)
class BuildingPoint:
    """A representative (g, lam); equality of points is ``norms_equal(alpha(p), alpha(q))``."""

    g: RatMatrix
    lam: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", _rat_matrix(self.g))
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        if len(self.lam) != len(self.g):
            raise ValueError("lambda and g differ in size")

    @property
    def n(self) -> int:
        return len(self.lam)

    def to_json(self) -> dict:
        return {"n": self.n, "g": [[str(x) for x in r] for r in self.g], "lambda": [str(x) for x in self.lam]}

    @classmethod
    def from_json(cls, data: dict) -> "BuildingPoint":
        p = cls([[Fraction(str(x)) for x in r] for r in data["g"]], [Fraction(str(x)) for x in data["lambda"]])
        if "n" in data and data["n"] != p.n:
            raise ValueError("field 'n' does not match the matrix size")
        return p


def evaluate_norm(N: GINorm, u: Sequence) -> ExtRat:
    """min of the weights over the support of the frame coordinates g^{-1} u."""
    if not all(isinstance(x, int) for x in u):
        fr = [Fraction(x) for x in u]
        scale = lcm(*(x.denominator for x in fr))
        u = [int(x * scale) for x in fr]
    for w, row in N._support:
        if sum(a * b for a, b in zip(row, u)):
            return ExtRat(w)
    return INF


def norms_equal(n1: GINorm, n2: GINorm) -> bool:
    """Equality of two GI norms by cross-evaluation on frames.

    If n1 takes the value mu_j on every frame vector f_j of n2, then expanding
    u = sum b_j f_j gives n2(u) = min mu_j = min n1(f_j) <= n1(u) by the
    ultrametric inequality; the symmetric check gives the reverse inequality.
    """
    if n1.n != n2.n:
        raise ValueError("norms live on spaces of different dimension")
    return all(evaluate_norm(a, b.frame_vector(j)) == b.weights[j]
               for a, b in ((n1, n2), (n2, n1)) for j in range(b.n))


def alpha(p: BuildingPoint) -> GINorm:
    return GINorm(p.g, p.lam)


def pi(p: BuildingPoint, R=None) -> tuple[Fraction, ...]:
    """Image in the dominant chamber {lam_1 >= ... >= lam_n}.

    ``R`` is accepted for a GL(n) root datum; with the upper triangular
    positive system, dominance is the descending order.
    """
    if R is not None and R.n_embedding is not None and len(R.n_embedding) != p.n:
        raise ValueError("root datum does not match the size of the point")
    return tuple(sorted(p.lam, reverse=True))


def normalize_projective(p: BuildingPoint) -> BuildingPoint:
    """The representative with weights summing to zero (the SL/PGL normalization)."""
    mean = sum(p.lam, Fraction(0)) / p.n
    return BuildingPoint(p.g, tuple(x - mean for x in p.lam))


def trop_build(g: Sequence[Sequence], lam: Sequence, h: ValuedMatrix) -> BuildingPoint:
    """The building point of g * diag(t^lam) * h, after checking h is integral-unit."""
    g = _rat_matrix(g)
    _checked_inverse(g)
    if h.n != len(g):
        raise ValueError("h and g differ in size")
    if not h.is_integral():
        raise NotInMaximalCompact("h has an entry of negative valuation")
    v = h.det().valuation()
    if v != 0:
        raise NotInMaximalCompact(f"det(h) has valuation {v}, not 0")
    return BuildingPoint(g, lam)


def apartment_coordinates(p: BuildingPoint, g: Sequence[Sequence]) -> tuple[Fraction, ...] | None:
    """Coordinates of p in the apartment with frame g, or None if p lies outside it."""
    frame = GINorm(g, [0] * len(g))
    norm = alpha(p)
    mu = []
    for j in range(frame.n):
        v = evaluate_norm(norm, frame.frame_vector(j))
        mu.append(v.value)
    candidate = GINorm(g, mu)
    return tuple(mu) if norms_equal(candidate, norm) else None
