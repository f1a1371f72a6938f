"""Decorated metric chains and their points in a fan.

A chain with edge lengths l_1, ..., l_k decorated by ray markers
beta_1, ..., beta_k (in the fixed ray order of the fan) determines the point
sum l_i * beta_i of the cone spanned by those rays. Infinite lengths push the
point to the boundary stratum of the face spanned by the corresponding rays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .polyhedra import Cone, ExtendedPoint, Fan, extended_point
from .valfield import INF, ExtRat, ValuedScalar, valuation

__all__ = [
    "MetricChain",
    "MarkedFan",
    "DecorationError",
    "validate_decoration",
    "realize",
    "trop_family",
    "gl2_chamber_fan",
]


class DecorationError(ValueError):
    """A decoration that does not determine a unique cone.

    ``kind`` is one of "order violated", "no cone", "multiple cones",
    "unknown marker".
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


@dataclass(frozen=True)
class MetricChain:
    lengths: tuple[ExtRat, ...]

    def __post_init__(self):
        ls = tuple(ExtRat(x) for x in self.lengths)
        if any(not x.is_inf and x.value < 0 for x in ls):
            raise ValueError("edge lengths must be non-negative")
        object.__setattr__(self, "lengths", ls)

    @property
    def k(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class MarkedFan:
    """A fan whose ray order is fixed, with an integral marker on every ray."""

    fan: Fan
    markers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.markers) != len(self.fan.rays):
            raise ValueError("one marker per ray is required")
        for m, r in zip(self.markers, self.fan.rays):
            if la.is_zero(m) or la.primitive(m) != r:
                raise ValueError(f"marker {m} is not a positive multiple of ray {r}")

    @classmethod
    def primitive(cls, fan: Fan) -> "MarkedFan":
        return cls(fan, fan.rays)

    @classmethod
    def from_json(cls, data: dict) -> "MarkedFan":
        fan = Fan(data["rays"], data["cones"], data.get("lattice_rank"))
        markers = data.get("ray_markers") or [list(r) for r in fan.rays]
        return cls(fan, tuple(tuple(m) for m in markers))


def gl2_chamber_fan() -> MarkedFan:
    """The dominant GL(2) chamber {l_1 >= l_2}, made strictly convex by the ray (1, 0)."""
    return MarkedFan.primitive(Fan([(1, 1), (1, 0), (-1, -1)], [[0, 1], [1, 2]]))


def _indices(dec: Sequence, mf: MarkedFan) -> list[int]:
    out = []
    for d in dec:
        if isinstance(d, int):
            if not 0 <= d < len(mf.markers):
                raise DecorationError("unknown marker", f"no ray with index {d}")
            out.append(d)
            continue
        hits = [i for i, m in enumerate(mf.markers) if tuple(m) == tuple(d)]
        if not hits:
            raise DecorationError("unknown marker", f"{tuple(d)} is not a ray marker of the fan")
        out.append(hits[0])
    return out


def validate_decoration(dec: Sequence, mf: MarkedFan) -> Cone:
    """The unique cone whose ordered rays carry exactly the decoration's markers.

    ``dec`` lists ray markers (vectors) or ray indices, one per edge.
    """
    idx = _indices(dec, mf)
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise DecorationError("order violated", f"ray indices {idx} are not increasing in the fixed order")
    fan = mf.fan
    k = len(idx)
    matches = [c for c in fan.cones if c == frozenset(idx) and fan.cone(c).dim == k]
    if not matches:
        raise DecorationError("no cone", f"no {k}-dimensional cone has rays {idx}")
    if len(matches) > 1:
        raise DecorationError("multiple cones", f"{len(matches)} cones have rays {idx}")
    return fan.cone(matches[0])


def realize(chain: MetricChain, dec: Sequence, mf: MarkedFan) -> tuple[Fraction, ...] | ExtendedPoint:
    """sum l_i * beta_i, or the boundary point when some lengths are infinite."""
    if chain.k != len(dec):
        raise ValueError("the decoration needs one marker per edge")
    sigma = validate_decoration(dec, mf)
    idx = _indices(dec, mf)
    n = mf.fan.ambient_dim
    finite = [Fraction(0)] * n
    infinite = []
    for length, i in zip(chain.lengths, idx):
        if length.is_inf:
            infinite.append(mf.fan.rays[i])
            continue
        for c in range(n):
            finite[c] += length.value * mf.markers[i][c]
    if not infinite:
        return tuple(finite)
    tau = Cone(infinite, (), n)
    return extended_point(sigma, tau, finite)


def trop_family(params: Sequence[ValuedScalar | None], dec: Sequence, mf: MarkedFan
                ) -> tuple[MetricChain, tuple[Fraction, ...] | ExtendedPoint]:
    """Edge lengths from node-smoothing parameters: l_i = val(r_i).

    A parameter given as None (or zero) marks a node that is not smoothed,
    which has infinite length.
    """
    lengths = []
    for i, r in enumerate(params):
        v = INF if r is None else valuation(r)
        if not v.is_inf and v.value < 0:
            raise ValueError(f"parameter {i} has negative valuation {v}")
        lengths.append(v)
    chain = MetricChain(tuple(lengths))
    return chain, realize(chain, dec, mf)
