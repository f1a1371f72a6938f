"""Rational polyhedral cones and fans in Z^n, dual cones, Gordan monoids,
stars, orbit-cone tables and tropicalization of toric points.

Cones are stored by both descriptions at once: primitive generating rays plus
a lineality basis, and primitive inequality normals plus equations. The
conversion between the two is the double description method over Q.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _linalg as la
from .valfield import INF, ExtRat, ValuedScalar, valuation
from .zlattice import Lattice, quotient_map, saturated_kernel, smith_normal_form

__all__ = [
    "Cone",
    "Fan",
    "FanViolation",
    "ToricMonoid",
    "ExtendedPoint",
    "OrbitConeTable",
    "BudgetExceeded",
    "dual_cone",
    "gordan_monoid",
    "hilbert_basis",
    "extended_point",
    "double_description",
    "faces",
    "star",
    "orbit_cone_table",
    "trop_torus_point",
    "trop_toric_point",
    "canonical_compactification_strata",
    "DEFAULT_RANK_CAP",
]

DEFAULT_RANK_CAP = 4
DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its rank cap or point budget."""


def _prim(v) -> tuple[int, ...]:
    return la.primitive(v)


def double_description(inequalities: Sequence[Sequence], equations: Sequence[Sequence], n: int
                       ) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Generators of {x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}.

    Returns (rays, lineality): primitive integer rays, irredundant modulo the
    lineality space, and a saturated integer basis of the lineality space.
    """
    eqs = [tuple(e) for e in equations if not la.is_zero(e)]
    ineqs = [tuple(a) for a in inequalities if not la.is_zero(a)]
    lin: list[tuple] = [tuple(Fraction(x) for x in v) for v in saturated_kernel(eqs, n)] if n else []
    rays: list[tuple] = []
    done: list[tuple] = []
    for a in ineqs:
        hit = next((l for l in lin if la.dot(a, l) != 0), None)
        if hit is not None:
            s = la.dot(a, hit)
            if s < 0:
                hit, s = tuple(-x for x in hit), -s
            lin = [tuple(x - (la.dot(a, l) / s) * y for x, y in zip(l, hit)) for l in lin if l is not hit and
                   tuple(-x for x in l) != hit]
            rays = [tuple(x - (la.dot(a, r) / s) * y for x, y in zip(r, hit)) for r in rays]
            rays.append(hit)
        else:
            pos = [r for r in rays if la.dot(a, r) > 0]
            neg = [r for r in rays if la.dot(a, r) < 0]
            new = [r for r in rays if la.dot(a, r) >= 0]
            for p in pos:
                ap = la.dot(a, p)
                for q in neg:
                    aq = la.dot(a, q)
                    new.append(tuple(ap * y - aq * x for x, y in zip(p, q)))
            rays = new
        done.append(a)
        rays = _prune(rays, done, eqs, len(lin), n)
    lineality = saturated_kernel(ineqs + eqs, n) if n else []
    if len(lineality) != len(lin):  # pragma: no cover - internal consistency
        raise AssertionError("double description lost track of the lineality space")
    return [_prim(r) for r in rays], lineality


def _prune(rays, ineqs, eqs, lin_dim, n):
    target = n - lin_dim - 1
    kept: dict[frozenset, tuple] = {}
    for r in rays:
        if la.is_zero(r):
            continue
        tight = frozenset(i for i, a in enumerate(ineqs) if la.dot(a, r) == 0)
        if tight in kept:
            continue
        if la.rank([ineqs[i] for i in tight] + list(eqs)) == target:
            kept[tight] = tuple(Fraction(x) for x in _prim(r))
    return list(kept.values())


class Cone:
    """A rational polyhedral cone in Q^n given by generators.

    ``rays`` are primitive and irredundant; when the cone has a lineality space
    each ray is taken orthogonal to it, which makes the representation unique.
    For strictly convex cones the rays keep the order of the input generators.
    """

    def __init__(self, rays: Iterable[Sequence[int]] = (), lineality: Iterable[Sequence[int]] = (),
                 ambient_dim: int | None = None, *, _hrep=None):
        gens = [tuple(r) for r in rays]
        lin = [tuple(v) for v in lineality]
        if ambient_dim is None:
            if not gens and not lin:
                raise ValueError("ambient_dim is required for a cone without generators")
            ambient_dim = len((gens or lin)[0])
        self.ambient_dim = n = ambient_dim
        gens = [g for g in gens if not la.is_zero(g)]
        lin = [v for v in lin if not la.is_zero(v)]
        if _hrep is None:
            # H-description = generators of the dual cone
            dual_rays, dual_lin = double_description(gens + [tuple(-x for x in v) for v in lin] + lin, [], n)
            ineqs, eqs = dual_rays, dual_lin
        else:
            ineqs, eqs = _hrep
        self.inequalities: tuple[tuple[int, ...], ...] = tuple(ineqs)
        self.equations: tuple[tuple[int, ...], ...] = tuple(eqs)
        vrays, vlin = double_description(ineqs, eqs, n)
        self.lineality: tuple[tuple[int, ...], ...] = tuple(vlin)
        canon = [self._canonical_ray(r) for r in vrays]
        ordered = []
        for g in gens:
            c = self._canonical_ray(g) if not self._in_lineality(g) else None
            if c is not None and c in canon and c not in ordered:
                ordered.append(c)
        ordered += sorted(c for c in canon if c not in ordered)
        self.rays: tuple[tuple[int, ...], ...] = tuple(ordered)

    @classmethod
    def from_inequalities(cls, inequalities: Sequence[Sequence], equations: Sequence[Sequence] = (),
                          ambient_dim: int | None = None) -> "Cone":
        if ambient_dim is None:
            ambient_dim = len((list(inequalities) or list(equations))[0])
        rays, lin = double_description(inequalities, equations, ambient_dim)
        return cls(rays, lin, ambient_dim)

    def _in_lineality(self, v) -> bool:
        return all(la.dot(e, v) == 0 for e in self.equations) and all(la.dot(a, v) == 0 for a in self.inequalities)

    def _canonical_ray(self, r) -> tuple[int, ...]:
        return _prim(la.project_orthogonal(r, self.lineality)) if self.lineality else _prim(r)

    # ---- basic properties ----------------------------------------------------
    @property
    def lattice(self) -> Lattice:
        return Lattice(self.ambient_dim)

    @property
    def dim(self) -> int:
        return la.rank(list(self.rays) + list(self.lineality)) if (self.rays or self.lineality) else 0

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lineality

    @property
    def is_simplicial(self) -> bool:
        return self.is_strictly_convex and la.rank(self.rays) == len(self.rays) if self.rays else True

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """Rays together with both signs of every lineality vector."""
        out = list(self.rays)
        for v in self.lineality:
            out += [v, tuple(-x for x in v)]
        return out

    def span_basis(self) -> list[tuple[int, ...]]:
        gens = list(self.rays) + list(self.lineality)
        return [_prim(b) for b in la.row_reduce(gens)[0]] if gens else []

    def contains(self, x: Sequence) -> bool:
        return all(la.dot(a, x) >= 0 for a in self.inequalities) and all(la.dot(e, x) == 0 for e in self.equations)

    __contains__ = contains

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.contains_cone(other) and other.contains_cone(self)

    def __hash__(self):
        return hash((self.ambient_dim, self.dim, frozenset(self.rays) if not self.lineality else None))

    def relative_interior_point(self) -> tuple[int, ...]:
        return tuple(sum(r[i] for r in self.rays) for i in range(self.ambient_dim))

    def dual(self) -> "Cone":
        # the dual is generated by our inequalities and equations
        return Cone(self.inequalities, self.equations, self.ambient_dim,
                    _hrep=(tuple(self.generators), ()))

    def intersection(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(self.inequalities + other.inequalities,
                                      self.equations + other.equations, self.ambient_dim)

    # ---- faces -------------------------------------------------------------
    def face_ray_sets(self) -> list[frozenset[int]]:
        """Ray index sets of all faces, smallest first (the lineality face is the empty set)."""
        full = frozenset(range(len(self.rays)))
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for f in frontier:
                for a in self.inequalities:
                    g = frozenset(i for i in f if la.dot(a, self.rays[i]) == 0)
                    if g not in found:
                        found.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def face(self, ray_indices: Iterable[int]) -> "Cone":
        idx = sorted(ray_indices)
        return Cone([self.rays[i] for i in idx], self.lineality, self.ambient_dim)

    def faces(self) -> list["Cone"]:
        return [self.face(s) for s in self.face_ray_sets()]

    def is_face_of(self, other: "Cone") -> bool:
        if not other.contains_cone(self):
            return False
        return any(f == self for f in other.faces() if f.dim == self.dim)

    def __repr__(self):
        extra = f", lineality={list(self.lineality)}" if self.lineality else ""
        return f"Cone({[list(r) for r in self.rays]}{extra})"


def dual_cone(sigma: Cone) -> Cone:
    """All m with <x, m> >= 0 for every x in sigma (standard pairing on Z^n)."""
    return sigma.dual()


def faces(sigma: Cone) -> list[Cone]:
    return sigma.faces()


# ---- Gordan monoids ---------------------------------------------------------

@dataclass(frozen=True)
class ToricMonoid:
    """The saturated monoid cone ∩ Z^n, through its Hilbert basis."""

    cone: Cone
    hilbert_basis: tuple[tuple[int, ...], ...]

    @property
    def units(self) -> tuple[tuple[int, ...], ...]:
        return tuple(h for h in self.hilbert_basis if tuple(-x for x in h) in self.hilbert_basis)


def _lineality_split(lin: Sequence[Sequence[int]], n: int):
    """(P, S, K): P projects Z^n onto Z^n / (Z^n ∩ span lin), S is a section, K a kernel basis."""
    if not lin:
        ident = la.identity(n)
        return ident, ident, []
    cols = la.transpose([list(v) for v in lin])
    U, D, _ = smith_normal_form(cols)
    k = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    Uinv = [[int(x) for x in row] for row in la.inverse(U)]
    P = [U[i] for i in range(k, n)]
    S = [row[k:] for row in Uinv]
    K = [tuple(Uinv[i][j] for i in range(n)) for j in range(k)]
    return P, S, K


def hilbert_basis(cone: Cone, *, budget: int = DEFAULT_BUDGET, rank_cap: int = DEFAULT_RANK_CAP
                  ) -> list[tuple[int, ...]]:
    """Minimal generating set of the monoid cone ∩ Z^n.

    Every irreducible element lies in the zonotope spanned by the rays, so the
    lattice points of its bounding box are enumerated and the reducible ones
    (those x with x - y in the cone for a smaller candidate y) are discarded.
    Units contribute a basis of the lineality lattice with both signs.
    """
    n = cone.ambient_dim
    if n > rank_cap:
        raise BudgetExceeded(f"lattice rank {n} exceeds the cap {rank_cap}")
    P, S, K = _lineality_split(cone.lineality, n)
    q = n - len(K)
    gens = [_prim(la.matvec(P, r)) for r in cone.rays]
    pointed = Cone(gens, (), q) if q else None
    lo = [sum(min(0, g[i]) for g in gens) for i in range(q)]
    hi = [sum(max(0, g[i]) for g in gens) for i in range(q)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > budget:
        raise BudgetExceeded(f"enumeration box has {size} points, budget is {budget}")
    basis_q: list[tuple[int, ...]] = []
    if pointed is not None and gens:
        # a strictly positive functional on the pointed cone orders candidates
        w = [sum(a[i] for a in pointed.inequalities) for i in range(q)]
        cands = [x for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
                 if any(x) and pointed.contains(x)]
        cands.sort(key=lambda x: (la.dot(w, x), x))
        for x in cands:
            hx = la.dot(w, x)
            if not any(la.dot(w, y) < hx and pointed.contains(tuple(a - b for a, b in zip(x, y)))
                       for y in basis_q):
                basis_q.append(x)
    lifted = [tuple(int(v) for v in la.matvec(S, h)) for h in basis_q]
    units = []
    for v in K:
        units += [tuple(v), tuple(-x for x in v)]
    return lifted + units


def gordan_monoid(sigma: Cone, *, budget: int = DEFAULT_BUDGET, rank_cap: int = DEFAULT_RANK_CAP) -> ToricMonoid:
    """Hilbert basis of the dual monoid sigma^vee ∩ M."""
    dual = sigma.dual()
    return ToricMonoid(dual, tuple(hilbert_basis(dual, budget=budget, rank_cap=rank_cap)))


# ---- fans -------------------------------------------------------------------

@dataclass(frozen=True)
class FanViolation:
    kind: str
    cones: tuple[frozenset, ...]
    detail: str = ""


class Fan:
    """A finite fan, given by rays and generating cones (ray index lists).

    Faces are inferred, so the cone list is face-closed by construction.
    ``cones`` holds every cone as a frozenset of ray indices.
    """

    def __init__(self, rays: Sequence[Sequence[int]], cones: Sequence[Iterable[int]],
                 ambient_dim: int | None = None, *, basis=None):
        self.rays: tuple[tuple[int, ...], ...] = tuple(_prim(r) for r in rays)
        if ambient_dim is None:
            if not self.rays:
                raise ValueError("ambient_dim is required for a fan without rays")
            ambient_dim = len(self.rays[0])
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._index = {r: i for i, r in enumerate(self.rays)}
        self._cone_cache: dict[frozenset, Cone] = {}
        generating: list[frozenset] = []
        all_cones: set[frozenset] = {frozenset()}
        for spec in cones:
            idx = sorted(set(spec))
            c = Cone([self.rays[i] for i in idx], (), ambient_dim)
            # keep only the extreme rays (redundant ones are not faces)
            key = frozenset(self._index[r] for r in c.rays)
            self._cone_cache[key] = c
            generating.append(key)
            for f in c.face_ray_sets():
                all_cones.add(frozenset(self._index[c.rays[i]] for i in f))
        self.generating = tuple(generating)
        self.cones: tuple[frozenset, ...] = tuple(sorted(all_cones, key=lambda s: (self.cone(s).dim, sorted(s))))

    @classmethod
    def from_cones(cls, cones: Sequence[Sequence[Sequence[int]]], ambient_dim: int) -> "Fan":
        rays: list[tuple[int, ...]] = []
        specs = []
        for gens in cones:
            spec = []
            for g in gens:
                if la.is_zero(g):
                    continue
                p = _prim(g)
                if p not in rays:
                    rays.append(p)
                spec.append(rays.index(p))
            specs.append(spec)
        return cls(rays, specs, ambient_dim)

    def cone(self, key: Iterable[int]) -> Cone:
        key = frozenset(key)
        c = self._cone_cache.get(key)
        if c is None:
            c = Cone([self.rays[i] for i in sorted(key)], (), self.ambient_dim)
            self._cone_cache[key] = c
        return c

    def key_of(self, cone: Cone) -> frozenset | None:
        """Index set of a cone of the fan equal to ``cone``, or None."""
        try:
            key = frozenset(self._index[r] for r in cone.rays)
        except KeyError:
            return None
        return key if key in self.cones and cone.is_strictly_convex else None

    @property
    def maximal_cones(self) -> list[frozenset]:
        return [c for c in self.cones if not any(c < d for d in self.cones)]

    def cones_of_dim(self, k: int) -> list[frozenset]:
        return [c for c in self.cones if self.cone(c).dim == k]

    def support_contains(self, x: Sequence) -> bool:
        return any(self.cone(c).contains(x) for c in self.maximal_cones)

    def violations(self) -> list[FanViolation]:
        out = []
        for c in self.cones:
            if not self.cone(c).is_strictly_convex:
                out.append(FanViolation("not strictly convex", (c,)))
        # pairs of generating cones suffice: faces of faces meet in faces
        cones = list(dict.fromkeys(self.generating))
        for i, a in enumerate(cones):
            ca = self.cone(a)
            for b in cones[i + 1:]:
                cb = self.cone(b)
                meet = ca.intersection(cb)
                key = self.key_of(meet)
                # the intersection must be a cone of the fan and a face of both
                if key is None or not (key <= a and key <= b):
                    out.append(FanViolation("intersection is not a common face", (a, b), repr(meet)))
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        out = {"lattice_rank": self.ambient_dim, "rays": [list(r) for r in self.rays],
               "cones": [sorted(c) for c in self.maximal_cones]}
        if self.basis is not None:
            out["basis"] = [list(b) for b in self.basis]
        return out

    def __repr__(self):
        return f"Fan(rays={list(self.rays)}, maximal={[sorted(c) for c in self.maximal_cones]})"


def star(tau: Cone | Iterable[int], fan: Fan) -> Fan:
    """The fan in N(tau) = N / span(tau) formed by projecting the cones containing tau."""
    key = fan.key_of(tau) if isinstance(tau, Cone) else frozenset(tau)
    if key is None or key not in fan.cones:
        raise ValueError("tau is not a cone of the fan")
    n = fan.ambient_dim
    P = quotient_map([fan.rays[i] for i in key], n)
    images = []
    for c in fan.cones:
        if key <= c:
            images.append([la.matvec(P, fan.rays[i]) for i in sorted(c - key)])
    return Fan.from_cones(images, len(P))


@dataclass
class OrbitConeTable:
    """Strata of the toric variety of a fan, one per cone.

    ``closure[i]`` lists the strata in the closure of stratum i; it is derived
    from the star fans, independently of the face relation on cones.
    """

    cones: list[frozenset]
    stratum_dim: list[int]
    closure: dict[int, set[int]]
    counts: dict[int, int]
    order_reversing: bool


def orbit_cone_table(fan: Fan) -> OrbitConeTable:
    cones = list(fan.cones)
    n = fan.ambient_dim
    dims = [n - fan.cone(c).dim for c in cones]
    closure: dict[int, set[int]] = {}
    for i, c in enumerate(cones):
        st = star(c, fan)
        # each cone of star(c) lifts to the cone of the fan containing c that projects onto it
        P = quotient_map([fan.rays[r] for r in c], n)
        members = set()
        for j, d in enumerate(cones):
            if not fan.cone(d).contains_cone(fan.cone(c)):
                continue
            image = Cone([la.matvec(P, fan.rays[r]) for r in d], (), len(P))
            if st.key_of(image) is not None:
                members.add(j)
        closure[i] = members
    ok = True
    for i, a in enumerate(cones):
        for j, b in enumerate(cones):
            is_face = fan.cone(a).is_face_of(fan.cone(b))
            if is_face != (j in closure[i]):
                ok = False
    counts: dict[int, int] = {}
    for dm in dims:
        counts[dm] = counts.get(dm, 0) + 1
    return OrbitConeTable(cones, dims, closure, counts, ok)


# ---- tropicalization of toric points ----------------------------------------

def trop_torus_point(coords: Sequence[ValuedScalar]) -> tuple[Fraction, ...]:
    """Coordinatewise valuations of a point of the torus (all coordinates nonzero)."""
    out = []
    for i, x in enumerate(coords):
        v = valuation(x)
        if v.is_inf:
            raise ValueError(f"coordinate {i} is zero: the point is not in the torus")
        out.append(v.value)
    return tuple(out)


@dataclass(frozen=True)
class ExtendedPoint:
    """A point of the canonical compactification of ``host``.

    It lives in the stratum N(face) = N / span(face); ``finite`` gives its
    coordinates with respect to the basis of N(face) dual to the rows of
    ``projection`` (a basis of face^perp ∩ M).
    """

    host: Cone
    face: Cone
    finite: tuple[Fraction, ...]
    projection: tuple[tuple[int, ...], ...] = field(repr=False)

    def value(self, m: Sequence[int]) -> ExtRat:
        """The induced monoid homomorphism S_host -> Q ∪ {inf} evaluated at m."""
        if any(la.dot(r, m) != 0 for r in self.face.rays):
            return INF
        c = la.solve(la.transpose(self.projection), m) if self.projection else ()
        return ExtRat(la.dot(self.finite, c)) if c else ExtRat(0)


def extended_point(host: Cone, face: Cone, vector: Sequence) -> ExtendedPoint:
    """The point of stratum ``face`` obtained by projecting ``vector`` to N(face)."""
    P = tuple(tuple(r) for r in quotient_map(face.rays, host.ambient_dim))
    return ExtendedPoint(host, face, tuple(Fraction(x) for x in la.matvec(P, vector)), P)


def trop_toric_point(sigma: Cone, vals: Mapping[Sequence[int], ExtRat | Fraction | int],
                     monoid: ToricMonoid | None = None) -> ExtendedPoint:
    """Tropicalize a point of U_sigma given by the valuations of the Hilbert basis characters."""
    if monoid is None:
        monoid = gordan_monoid(sigma)
    table = {tuple(k): ExtRat(v) for k, v in vals.items()}
    missing = [h for h in monoid.hilbert_basis if h not in table]
    if missing:
        raise ValueError(f"no value given for Hilbert basis elements {missing}")
    finite = {h for h in monoid.hilbert_basis if not table[h].is_inf}
    face = None
    for f in sigma.faces():
        perp = {h for h in monoid.hilbert_basis if all(la.dot(r, h) == 0 for r in f.rays)}
        if perp == finite:
            face = f
            break
    if face is None:
        raise ValueError("finite-valuation locus is not the face monoid of any face")
    P = tuple(tuple(r) for r in quotient_map(face.rays, sigma.ambient_dim))
    rows, rhs = [], []
    for h in sorted(finite):
        c = la.solve(la.transpose(P), h)
        rows.append(c)
        rhs.append(table[h].value)
    lam = la.solve(rows, rhs) if rows else ()
    if lam is None:
        raise ValueError("valuations are not additive on the relations of the monoid")
    if not P:
        lam = ()
    elif not rows:
        raise ValueError("finite-valuation locus does not determine a point")
    return ExtendedPoint(sigma, face, tuple(lam), P)


def canonical_compactification_strata(sigma: Cone) -> list[tuple[Cone, Cone]]:
    """One stratum per face tau: the pair (tau, image of sigma in N(tau))."""
    out = []
    for tau in sigma.faces():
        P = quotient_map(tau.rays, sigma.ambient_dim)
        image = Cone([la.matvec(P, r) for r in sigma.rays if r not in tau.rays], (), len(P))
        out.append((tau, image))
    return out
