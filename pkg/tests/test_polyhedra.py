import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropgroups import samples
from tropgroups.polyhedra import (BudgetExceeded, Cone, Fan, canonical_compactification_strata, dual_cone,
                                  extended_point, faces, gordan_monoid, hilbert_basis, orbit_cone_table,
                                  star, trop_torus_point, trop_toric_point)
from tropgroups.valfield import INF, ExtRat, parse_scalar

from oracles import cone_contains, dual_monoid_box, in_halfspaces, representable

QUADRANT = Cone([(1, 0), (0, 1)])
SKEW = Cone([(1, 0), (1, 2)])


def p2_fan():
    return Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]])


def test_dual_examples():
    assert dual_cone(QUADRANT) == QUADRANT
    assert dual_cone(SKEW) == Cone([(0, 1), (2, -1)])
    half = dual_cone(Cone([(1, 1)]))
    assert half.dim == 2 and not half.is_strictly_convex
    assert half == Cone([(1, 1)], [(1, -1)])
    for m in [(1, -1), (-1, 1), (1, 1)]:
        assert half.contains(m)
    assert not half.contains((-1, 0))


def test_hilbert_basis_examples():
    assert set(gordan_monoid(QUADRANT).hilbert_basis) == {(1, 0), (0, 1)}
    assert set(gordan_monoid(SKEW).hilbert_basis) == {(0, 1), (1, 0), (2, -1)}
    zero = gordan_monoid(Cone([], (), 2))
    assert set(zero.hilbert_basis) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(zero.units) == set(zero.hilbert_basis)


def test_hilbert_basis_respects_rank_cap():
    with pytest.raises(BudgetExceeded):
        hilbert_basis(Cone([(1, 0, 0, 0, 0)]), rank_cap=4)


def test_face_counts():
    assert len(faces(QUADRANT)) == 4
    assert len(faces(SKEW)) == 4
    assert len(faces(Cone([(1, 1)]))) == 2
    for f in faces(SKEW):
        assert f.is_face_of(SKEW)
    assert not Cone([(1, 1)]).is_face_of(QUADRANT)


def test_from_inequalities_matches_generators():
    assert Cone.from_inequalities([(1, 0), (0, 1)]) == QUADRANT
    line = Cone.from_inequalities([], [(1, 1)])
    assert line.dim == 1 and line.contains((1, -1)) and line.contains((-1, 1))


def test_double_dual_random():
    rng = random.Random(5)
    for _ in range(20):
        sigma = samples.strictly_convex_cone(rng.choice([2, 3, 4]), rng)
        assert sigma.dual().dual() == sigma


def test_containment_agrees_with_caratheodory_oracle():
    rng = random.Random(8)
    for _ in range(15):
        sigma = samples.strictly_convex_cone(3, rng, bound=2)
        for _ in range(20):
            x = tuple(rng.randint(-3, 3) for _ in range(3))
            assert sigma.contains(x) == cone_contains(sigma.rays, sigma.lineality, x)


def test_hilbert_basis_complete_and_irredundant():
    rng = random.Random(13)
    for _ in range(10):
        rank = rng.choice([2, 3])
        sigma = samples.strictly_convex_cone(rank, rng, bound=2)
        basis = list(gordan_monoid(sigma).hilbert_basis)
        assert all(in_halfspaces(h, sigma.rays) for h in basis)
        assert representable(dual_monoid_box(sigma.rays, rank, 6), basis, sigma.rays) == []
        for h in basis:
            others = [g for g in basis if g != h]
            assert representable([h], others, sigma.rays) == [h]


def test_fan_validity():
    assert p2_fan().is_valid()
    broken = Fan([(1, 0), (0, 1), (1, 1)], [[0, 1], [1, 2]])
    bad = broken.violations()
    assert bad and bad[0].cones == (frozenset({0, 1}), frozenset({1, 2}))
    # the same support split by a ray is fine
    assert Fan([(1, 0), (0, 1), (1, 1)], [[0, 2], [1, 2]]).is_valid()


def test_fan_membership_and_lookup():
    fan = p2_fan()
    assert len(fan.cones) == 7
    assert fan.support_contains((-5, 3))
    assert fan.key_of(Cone([(0, 1)])) == frozenset({1})
    assert fan.key_of(Cone([(1, 1)])) is None
    assert len(fan.maximal_cones) == 3
    assert len(fan.cones_of_dim(1)) == 3


def test_star_examples():
    fan = p2_fan()
    s = star([0], fan)
    assert s.ambient_dim == 1 and len(s.rays) == 2 and s.is_valid()
    assert len(star([], fan).cones) == len(fan.cones)
    top = star([0, 1], fan)
    assert top.ambient_dim == 0 and len(top.cones) == 1
    with pytest.raises(ValueError):
        star(Cone([(1, 1)]), fan)


def test_orbit_cone_table_examples():
    t = orbit_cone_table(p2_fan())
    assert t.counts == {2: 1, 1: 3, 0: 3} and t.order_reversing
    assert len(orbit_cone_table(Fan([(1, 0), (0, 1)], [[0, 1]])).cones) == 4
    assert len(orbit_cone_table(Fan([], [], ambient_dim=2)).cones) == 1


def test_trop_torus_point_examples():
    assert trop_torus_point([parse_scalar("t^2"), parse_scalar("3+t")]) == (2, 0)
    assert trop_torus_point([parse_scalar("1"), parse_scalar("1")]) == (0, 0)
    assert trop_torus_point([parse_scalar("t^(1/2)", 2), parse_scalar("t^(-3)")]) == (Fraction(1, 2), -3)
    with pytest.raises(ValueError):
        trop_torus_point([parse_scalar("0"), parse_scalar("1")])


def test_trop_toric_point_examples():
    p = trop_toric_point(QUADRANT, {(1, 0): 1, (0, 1): INF})
    assert p.face == Cone([(0, 1)]) and p.finite in ((1,), (-1,))
    assert p.value((1, 0)) == 1 and p.value((0, 1)) == INF
    q = trop_toric_point(QUADRANT, {(1, 0): 2, (0, 1): 3})
    assert q.face.dim == 0 and q.value((1, 0)) == 2 and q.value((1, 1)) == 5
    r = trop_toric_point(QUADRANT, {(1, 0): INF, (0, 1): INF})
    assert r.face == QUADRANT and r.finite == ()


def test_trop_toric_point_rejects_bad_data():
    with pytest.raises(ValueError):
        trop_toric_point(SKEW, {(0, 1): 1, (1, 0): 1, (2, -1): 5})  # 2*(1,0) = (0,1) + (2,-1)
    with pytest.raises(ValueError):
        trop_toric_point(QUADRANT, {(1, 0): 1})


def test_compactification_strata_counts():
    assert len(canonical_compactification_strata(QUADRANT)) == 4
    assert len(canonical_compactification_strata(Cone([(1, 1)]))) == 2
    assert len(canonical_compactification_strata(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 1)]))) == 8


@settings(max_examples=40)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=2, max_size=2))
def test_torus_points_give_homomorphisms(v):
    """For a torus point the tropical map is m -> <v, m>, additive on the monoid."""
    vals = {h: ExtRat(sum(a * b for a, b in zip(v, h))) for h in gordan_monoid(SKEW).hilbert_basis}
    p = trop_toric_point(SKEW, vals)
    assert p.face.dim == 0
    for m in [(0, 1), (1, 0), (2, -1), (3, 1), (4, -1)]:
        assert p.value(m) == sum(a * b for a, b in zip(v, m))
    ext = extended_point(SKEW, Cone([], (), 2), v)
    assert all(ext.value(m) == p.value(m) for m in [(0, 1), (5, -2)])
