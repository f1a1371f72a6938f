from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropgroups.chains import (DecorationError, MarkedFan, MetricChain, gl2_chamber_fan, realize, trop_family,
                               validate_decoration)
from tropgroups.polyhedra import Cone, ExtendedPoint, Fan
from tropgroups.valfield import INF, ValuedScalar, parse_scalar

MF = gl2_chamber_fan()
SIGMA = [(1, 1), (1, 0)]


def test_validate_decoration():
    assert validate_decoration(SIGMA, MF) == Cone(SIGMA)
    with pytest.raises(DecorationError) as err:
        validate_decoration([(1, 0), (1, 1)], MF)
    assert err.value.kind == "order violated"
    assert validate_decoration([], MF).dim == 0
    with pytest.raises(DecorationError) as err:
        validate_decoration([(1, 1), (-1, -1)], MF)
    assert err.value.kind == "no cone"
    with pytest.raises(DecorationError) as err:
        validate_decoration([(2, 3)], MF)
    assert err.value.kind == "unknown marker"


def test_realize_examples():
    assert realize(MetricChain((2, 1)), SIGMA, MF) == (3, 2)
    assert realize(MetricChain((0, 0)), SIGMA, MF) == (0, 0)
    p = realize(MetricChain(("inf", 1)), SIGMA, MF)
    assert isinstance(p, ExtendedPoint) and p.face == Cone([(1, 1)])
    assert p.value((1, -1)) in (1, -1)  # image of (1, 0) in N(tau), read through a character of tau^perp
    assert p.value((1, 0)) == INF


def test_markers_scale_rays():
    fan = Fan([(1, 1), (1, 0)], [[0, 1]])
    mf = MarkedFan(fan, ((2, 2), (3, 0)))
    assert realize(MetricChain((1, 1)), [(2, 2), (3, 0)], mf) == (5, 2)
    with pytest.raises(ValueError):
        MarkedFan(fan, ((1, 2), (1, 0)))


def test_trop_family_examples():
    chain, point = trop_family([parse_scalar("t^3"), parse_scalar("t^(1/2)", 2)], SIGMA, MF)
    assert chain.lengths == (3, Fraction(1, 2))
    assert point == (Fraction(7, 2), 3)
    chain, point = trop_family([ValuedScalar.const(1), ValuedScalar.const(1)], SIGMA, MF)
    assert chain.lengths == (0, 0) and point == (0, 0)
    chain, point = trop_family([parse_scalar("t^2"), None], SIGMA, MF)
    assert chain.lengths == (2, INF) and isinstance(point, ExtendedPoint)
    with pytest.raises(ValueError):
        trop_family([parse_scalar("1/t"), parse_scalar("1")], SIGMA, MF)


def test_negative_lengths_rejected():
    with pytest.raises(ValueError):
        MetricChain((-1, 2))


lengths = st.fractions(min_value=0, max_value=20, max_denominator=6)


@given(lengths, lengths, lengths, lengths, lengths, lengths)
def test_realization_is_linear_and_lands_in_the_cone(a, b, x1, x2, y1, y2):
    p = realize(MetricChain((x1, x2)), SIGMA, MF)
    q = realize(MetricChain((y1, y2)), SIGMA, MF)
    r = realize(MetricChain((a * x1 + b * y1, a * x2 + b * y2)), SIGMA, MF)
    assert r == tuple(a * u + b * v for u, v in zip(p, q))
    assert Cone(SIGMA).contains(p)
