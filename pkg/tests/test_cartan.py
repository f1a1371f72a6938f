import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropgroups import samples
from tropgroups.cartan import cartan_decompose, functoriality_check, theorem_d_check, trop_spherical
from tropgroups.valfield import parse_scalar, valuation
from tropgroups.valmatrix import SingularMatrixError, ValuedMatrix

P12 = [[0, 1], [1, 0]]


def M(rows, d=1):
    return ValuedMatrix.parse(rows, d)


def test_valued_matrix_basics():
    x = M([["1", "t"], ["t^2", "3"]])
    assert x.det() == parse_scalar("3 - t^3")
    assert (x @ ValuedMatrix.identity(2)) == x
    assert x.minor([0], [1]) == parse_scalar("t")
    assert M([["t^(1/2)", "0"], ["0", "1"]], 2).d == 2
    assert ValuedMatrix.t_diagonal((Fraction(1, 2), 0)).det() == parse_scalar("t^(1/2)", 2)
    assert M([["1", "0"], ["t", "1"]]).is_integral_unit()
    assert not M([["t", "0"], ["0", "1"]]).is_integral_unit()
    assert M([["t"]]).block_embed(2) == M([["t", "0"], ["0", "1"]])
    with pytest.raises(ValueError):
        ValuedMatrix.parse([["1", "2"]])


def test_det_routes_agree_for_larger_matrices():
    rng = random.Random(3)
    x = samples.valued_matrix(6, rng, d=1)
    rows = list(range(6))
    assert x.det() == x.minor(rows, rows)


def test_cartan_examples():
    f = cartan_decompose(M([["t^2", "0"], ["0", "1"]]))
    assert f.lam == (2, 0)
    assert f.g == ValuedMatrix.identity(2) and f.h == ValuedMatrix.identity(2)
    f = cartan_decompose(M([["1", "1"], ["t", "0"]]))
    assert f.lam == (1, 0) and f.reconstruct() == M([["1", "1"], ["t", "0"]])
    assert cartan_decompose(ValuedMatrix.identity(3)).lam == (0, 0, 0)
    with pytest.raises(SingularMatrixError):
        cartan_decompose(M([["1", "t"], ["1", "t"]]))


def test_trop_spherical_examples():
    assert trop_spherical(M([["1", "1"], ["t", "0"]])) == (1, 0)
    assert trop_spherical(M([["t", "t"], ["t", "t+t^2"]])) == (2, 1)
    assert trop_spherical(M([["t^5", "0"], ["0", "t^(-1)"]])) == (5, -1)
    with pytest.raises(SingularMatrixError):
        trop_spherical(M([["0", "0"], ["0", "1"]]))


def test_theorem_d_examples():
    h = M([["1", "0"], ["t", "1"]])
    r = theorem_d_check([[1, 1], [0, 1]], (2, 0), h)
    assert r.holds and r.lhs == (2, 0)
    r = theorem_d_check([[1, 0], [0, 1]], (0, 0), ValuedMatrix.identity(2))
    assert r.holds and r.lhs == (0, 0)
    r = theorem_d_check(P12, (0, 3), ValuedMatrix.identity(2))
    assert r.holds and r.rhs == (3, 0)


def test_functoriality_examples():
    r = functoriality_check(M([["1", "1"], ["t", "0"]]), "det")
    assert r.holds and r.lhs == (1,)
    assert functoriality_check(M([["t^2", "0"], ["0", "1"]]), "det").rhs == (2,)
    r = functoriality_check(M([["t^3"]]), "block", 2)
    assert r.holds and r.rhs == (3, 0)
    with pytest.raises(ValueError):
        functoriality_check(M([["t", "0"], ["0", "1"]]), "block", 1)


seeds = st.integers(0, 10 ** 6)


@settings(max_examples=30)
@given(seeds, st.integers(1, 4))
def test_decomposition_is_exact_and_matches_minors(seed, n):
    rng = random.Random(seed)
    x = samples.valued_matrix(n, rng, d=2)
    f = cartan_decompose(x)
    assert f.reconstruct() == x
    assert f.g.is_integral_unit() and f.h.is_integral_unit()
    assert list(f.lam) == sorted(f.lam, reverse=True)
    assert f.lam == trop_spherical(x)
    assert sum(f.lam) == valuation(x.det()).value


@settings(max_examples=25)
@given(seeds, st.integers(2, 3))
def test_spherical_invariant_under_integral_units(seed, n):
    rng = random.Random(seed)
    x = samples.valued_matrix(n, rng, d=2)
    k1, k2 = samples.integral_unit(n, rng, d=2), samples.integral_unit(n, rng, d=2)
    assert trop_spherical(k1 @ x @ k2) == trop_spherical(x)


@settings(max_examples=25)
@given(seeds, st.integers(2, 3))
def test_diagram_commutes(seed, n):
    rng = random.Random(seed)
    g = samples.rational_matrix(n, rng)
    lam = samples.weights(n, rng, max_den=2)
    assert theorem_d_check(g, lam, samples.integral_unit(n, rng, d=2)).holds
