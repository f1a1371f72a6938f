"""Kummer data, stacky cones and fans, and fans in the building.

A Kummer datum on a cone sigma in N is a finite-index superlattice M~ of M,
given by a basis (rows, in M-coordinates). Its dual Ñ is a sublattice of N,
and the stacky cone sigma~ is sigma with its rays measured in Ñ.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import _linalg as la
from .building import BuildingPoint, alpha, apartment_coordinates, norms_equal
from .polyhedra import Cone, Fan, ToricMonoid, gordan_monoid
from .rootdata import RootDatum, weyl_group
from .zlattice import FiniteAbelianGroup, cokernel, is_unimodular_subset, same_lattice, saturated_kernel

__all__ = [
    "KummerData",
    "StackyFan",
    "StackyViolation",
    "BuildingCone",
    "BuildingFan",
    "Witness",
    "NotRelatable",
    "restrict_kummer_to_face",
    "validate_stacky_fan",
    "stabilizer_group",
    "is_smooth_stacky_cone",
    "one_parameter_limit_exists",
    "weyl_equivariance_check",
    "validate_building_fan",
]

RatMatrix = tuple[tuple[Fraction, ...], ...]


def _identity_pairing(r: int):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class KummerData:
    """A cone with a superlattice M~ ⊇ M of finite index.

    ``basis`` holds the rows of a basis of M~ in M ⊗ Q; ``pairing`` is the
    matrix P with <n, m> = n^T P m (identity unless the lattices come from a
    root datum with another convention).
    """

    cone: Cone
    basis: RatMatrix
    pairing: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        r = self.cone.ambient_dim
        B = tuple(tuple(Fraction(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", B)
        if self.pairing is None:
            object.__setattr__(self, "pairing", _identity_pairing(r))
        if len(B) != r or any(len(row) != r for row in B) or la.det(B) == 0:
            raise ValueError("superlattice basis must be a nonsingular r x r matrix")
        inv = la.inverse(B)
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("M is not contained in the given superlattice")

    @classmethod
    def trivial(cls, cone: Cone, pairing=None) -> "KummerData":
        r = cone.ambient_dim
        return cls(cone, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)), pairing)

    @property
    def inclusion(self) -> list[list[int]]:
        """Matrix whose rows are the M~-coordinates of the standard basis of M."""
        return [[int(x) for x in row] for row in la.inverse(self.basis)]

    @property
    def dual_basis(self) -> list[tuple[Fraction, ...]]:
        """Basis of Ñ (rows, in N-coordinates), dual to ``basis`` under the pairing."""
        PB = la.matmul(self.pairing, la.transpose(self.basis))
        return [tuple(row) for row in la.inverse(PB)]

    def to_tilde(self, n: Sequence) -> tuple[Fraction, ...]:
        """Ñ-coordinates of a vector of N_Q."""
        return la.matvec(la.matmul(self.basis, la.transpose(self.pairing)), n)

    def tilde_rays(self) -> list[tuple[int, ...]]:
        """Primitive generators of sigma~ in Ñ-coordinates."""
        return [la.primitive(self.to_tilde(r)) for r in self.cone.rays]

    def tilde_monoid(self) -> tuple[ToricMonoid, list[tuple[Fraction, ...]]]:
        """Hilbert basis of S~ = sigma^vee ∩ M~, in M~-coordinates and in M ⊗ Q."""
        t = Cone(self.tilde_rays(), (), self.cone.ambient_dim)
        mono = gordan_monoid(t)
        return mono, [tuple(la.matvec(la.transpose(self.basis), h)) for h in mono.hilbert_basis]

    def sharp_lattice(self) -> list[tuple[Fraction, ...]]:
        """Basis of Ñ ∩ span(sigma), which determines the induced map on sharp monoids."""
        Nt = self.dual_basis
        r = self.cone.ambient_dim
        annihilators = _annihilators(self.cone.rays, r)
        rows = [tuple(la.dot(row, q) for row in Nt) for q in annihilators]
        coeffs = saturated_kernel(rows, r) if rows else [tuple(e) for e in la.identity(r)]
        if not self.cone.rays:
            return []
        return [tuple(sum(c * Nt[i][k] for i, c in enumerate(v)) for k in range(r)) for v in coeffs]


def _annihilators(rays, r: int) -> list[tuple]:
    return la.nullspace(rays, r) if rays else [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]


def restrict_kummer_to_face(K: KummerData, tau: Cone) -> KummerData:
    if not tau.is_face_of(K.cone):
        raise ValueError("tau is not a face of the cone")
    return KummerData(tau, K.basis, K.pairing)


def stabilizer_group(K: KummerData) -> FiniteAbelianGroup:
    """The finite group M~ / M."""
    return cokernel(K.inclusion)


def is_smooth_stacky_cone(K: KummerData) -> bool:
    """Whether sigma~ is generated by part of a basis of Ñ."""
    if not K.cone.is_simplicial:
        return False
    return is_unimodular_subset(K.tilde_rays())


def kummer_agree_on(K1: KummerData, K2: KummerData, tau: Cone) -> bool:
    a = restrict_kummer_to_face(K1, tau).sharp_lattice()
    b = restrict_kummer_to_face(K2, tau).sharp_lattice()
    return same_lattice(a, b)


@dataclass(frozen=True)
class StackyViolation:
    cones: tuple[frozenset, frozenset]
    face: frozenset
    detail: str = ""


@dataclass
class StackyFan:
    """A fan with a Kummer datum (superlattice basis) on each generating cone."""

    fan: Fan
    kummer: dict[frozenset, RatMatrix]
    pairing: tuple[tuple[int, ...], ...] | None = None

    def datum(self, key: frozenset) -> KummerData:
        if key in self.kummer:
            return KummerData(self.fan.cone(key), self.kummer[key], self.pairing)
        # faces inherit from a generating cone containing them
        for gen in self.fan.generating:
            if key <= gen and gen in self.kummer:
                return KummerData(self.fan.cone(key), self.kummer[gen], self.pairing)
        return KummerData.trivial(self.fan.cone(key), self.pairing)

    @classmethod
    def trivial(cls, fan: Fan, pairing=None) -> "StackyFan":
        r = fan.ambient_dim
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))
        return cls(fan, {k: ident for k in fan.generating}, pairing)


def validate_stacky_fan(F: StackyFan) -> list[StackyViolation]:
    """Face compatibility for every pair of generating cones on their common face."""
    keys = list(dict.fromkeys(F.fan.generating))
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            common = a & b
            tau = F.fan.cone(common)
            if not kummer_agree_on(F.datum(a), F.datum(b), tau):
                return [StackyViolation((a, b), common, "restrictions to the common face differ")]
    return []


# ---- fans in the building ---------------------------------------------------

class NotRelatable(ValueError):
    """The point lies in no apartment of the fan."""


@dataclass(frozen=True)
class BuildingCone:
    apartment: RatMatrix
    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "apartment", tuple(tuple(Fraction(x) for x in r) for r in self.apartment))


@dataclass(frozen=True)
class Witness:
    """Claimed intersection of two cones, written in a common apartment.

    ``rays`` span the intersection in apartment ``apartment``; ``face_i`` and
    ``face_j`` index rays of the two cones that should span the same set.
    """

    pair: tuple[int, int]
    apartment: RatMatrix
    rays: tuple[tuple[int, ...], ...]
    face_i: tuple[int, ...]
    face_j: tuple[int, ...]


@dataclass
class BuildingFan:
    cones: list[BuildingCone]
    witnesses: list[Witness] = field(default_factory=list)


def _same_point(g1, v1, g2, v2) -> bool:
    return norms_equal(alpha(BuildingPoint(g1, v1)), alpha(BuildingPoint(g2, v2)))


def _rays_match(g_a, rays_a, g_b, rays_b) -> bool:
    """Each ray on one side is a building point equal to a positive multiple of a ray on the other."""
    if len(rays_a) != len(rays_b):
        return False
    remaining = list(rays_b)
    for r in rays_a:
        coords = apartment_coordinates(BuildingPoint(g_a, r), g_b)
        if coords is None:
            return False
        hit = next((s for s in remaining if la.primitive(coords) == la.primitive(s)), None)
        if hit is None:
            return False
        remaining.remove(hit)
    return True


def validate_building_fan(F: BuildingFan) -> list[str]:
    """Check each witness against building-point equivalence; cones in one apartment are intersected directly."""
    problems = []
    for w in F.witnesses:
        i, j = w.pair
        ci, cj = F.cones[i], F.cones[j]
        for label, c, idx in (("i", ci, w.face_i), ("j", cj, w.face_j)):
            face = Cone([c.cone.rays[k] for k in idx], (), c.cone.ambient_dim) if idx else \
                Cone([], (), c.cone.ambient_dim)
            if not face.is_face_of(c.cone):
                problems.append(f"witness {w.pair}: face_{label} is not a face of cone {c}")
                continue
            if not _rays_match(w.apartment, list(w.rays), c.apartment, list(face.rays)):
                problems.append(f"witness {w.pair}: rays do not match face_{label} as building points")
    witnessed = {tuple(sorted(w.pair)) for w in F.witnesses}
    for i, a in enumerate(F.cones):
        for j in range(i + 1, len(F.cones)):
            b = F.cones[j]
            if a.apartment == b.apartment:
                meet = a.cone.intersection(b.cone)
                if not (meet.is_face_of(a.cone) and meet.is_face_of(b.cone)):
                    problems.append(f"cones {i} and {j} meet outside a common face")
            elif (i, j) not in witnessed:
                problems.append(f"cones {i} and {j} lie in different apartments and have no witness")
    return problems


def one_parameter_limit_exists(u: tuple[Sequence[Sequence], Sequence[int]], fan: BuildingFan) -> bool:
    """Whether the cocharacter (g, v) lies in the support of the fan.

    For each cone, the point is located in the cone's apartment by evaluating
    its norm on the apartment frame; when it lies there, membership is a
    halfspace test.
    """
    g, v = u
    related = False
    for bc in fan.cones:
        coords = apartment_coordinates(BuildingPoint(g, v), bc.apartment)
        if coords is None:
            continue
        related = True
        if bc.cone.contains(coords):
            return True
    if not related:
        raise NotRelatable("the cocharacter lies in none of the fan's apartments")
    return False


def weyl_equivariance_check(fan: Fan | StackyFan, R: RootDatum) -> bool:
    """Whether every simple reflection permutes the cones (and their Kummer data)."""
    stacky = fan if isinstance(fan, StackyFan) else None
    base = stacky.fan if stacky else fan
    W = weyl_group(R)
    for s in W.generators:
        for key in base.cones:
            c = base.cone(key)
            image = Cone([la.matvec(s, r) for r in c.rays], (), base.ambient_dim)
            target = base.key_of(image)
            if target is None:
                return False
            if stacky is not None:
                src = stacky.datum(key).sharp_lattice()
                moved = [la.matvec(s, v) for v in src]
                if not same_lattice(moved, stacky.datum(target).sharp_lattice()):
                    return False
    return True
