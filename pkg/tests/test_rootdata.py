import dataclasses
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropgroups import _linalg as la
from tropgroups.polyhedra import BudgetExceeded
from tropgroups.rootdata import (RootDatum, apartment_intersection, builtin_root_datum, center_characters,
                                 dominant_representative, validate_root_datum, weyl_chamber, weyl_fan,
                                 weyl_group)
from tropgroups.zlattice import is_unimodular_subset


@pytest.mark.parametrize("kind", ["GL", "SL", "PGL"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_builtin_data_are_valid(kind, n):
    R = builtin_root_datum(f"{kind}({n})")
    assert validate_root_datum(R) == []
    assert len(R.roots) == n * (n - 1)
    assert len(R.positive_roots) == n * (n - 1) // 2
    assert weyl_group(R).order == math.factorial(n)


def test_gl2_roots():
    R = builtin_root_datum("GL(2)")
    assert set(R.roots) == {(1, -1), (-1, 1)}
    assert R.positive_roots == [(1, -1)]


def test_injected_violations():
    R = builtin_root_datum("SL(2)")
    bad_pair = dataclasses.replace(R, coroots=tuple(tuple(x * 2 for x in c) for c in R.coroots))
    assert any(v.kind == "pairing" for v in validate_root_datum(bad_pair))
    G = builtin_root_datum("GL(3)")
    missing = dataclasses.replace(G, roots=G.roots[:-1] + ((5, 0, -5),), coroots=G.coroots)
    kinds = {v.kind for v in validate_root_datum(missing)}
    assert kinds & {"closure", "pairing"}


def test_dominant_representative_examples():
    G3 = builtin_root_datum("GL(3)")
    lam, w = dominant_representative((0, 3, 1), G3)
    assert lam == (3, 1, 0)
    assert tuple(la.matvec(w, (0, 3, 1))) == lam
    lam, w = dominant_representative((3, 1, 0), G3)
    assert lam == (3, 1, 0) and w == tuple(tuple(r) for r in la.identity(3))
    lam, w = dominant_representative((0, 5), builtin_root_datum("GL(2)"))
    assert lam == (5, 0) and w == ((0, 1), (1, 0))


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=4, max_size=4))
def test_gl_dominance_is_descending_sort(v):
    lam, w = dominant_representative(v, builtin_root_datum("GL(4)"))
    assert list(lam) == sorted(v, reverse=True)
    assert tuple(la.matvec(w, v)) == lam


def test_apartment_intersection_examples():
    G3 = builtin_root_datum("GL(3)")
    plane = apartment_intersection([(1, -1, 0)], G3)
    assert len(plane) == 2 and all(v[0] == v[1] for v in plane)
    assert len(apartment_intersection([], G3)) == 3
    S3 = builtin_root_datum("SL(3)")
    a12, a23 = S3.roots[S3.simple[0]], S3.roots[S3.simple[1]]
    assert apartment_intersection([a12, a23], S3) == []


def test_weyl_fan_examples():
    pgl = weyl_fan(builtin_root_datum("PGL(3)"))
    assert len(pgl.cones) == 13 and len(pgl.maximal_cones) == 6 and len(pgl.rays) == 6
    gl1 = weyl_fan(builtin_root_datum("GL(1)"))
    assert len(gl1.cones) == 3
    sl2 = weyl_fan(builtin_root_datum("SL(2)"))
    assert len(sl2.rays) == 2 and len(sl2.cones) == 3
    gl3 = weyl_fan(builtin_root_datum("GL(3)"))
    assert gl3.is_valid() and len(gl3.maximal_cones) == 12
    with pytest.raises(BudgetExceeded):
        weyl_fan(builtin_root_datum("GL(5)"), rank_cap=4)


def test_chambers_and_unimodularity():
    pgl, sl = builtin_root_datum("PGL(3)"), builtin_root_datum("SL(3)")
    assert is_unimodular_subset(weyl_chamber(pgl).rays)
    assert not is_unimodular_subset(weyl_chamber(sl).rays)
    assert center_characters(sl) == [] and len(center_characters(builtin_root_datum("GL(3)"))) == 1


@pytest.mark.parametrize("name", ["GL(3)", "SL(3)", "PGL(3)", "SL(4)"])
def test_weyl_group_permutes_roots(name):
    R = builtin_root_datum(name)
    roots = set(R.roots)
    for w in weyl_group(R).elements:
        winv = la.inverse(w)
        # W acts on M by the contragredient action
        moved = {tuple(int(x) for x in la.matvec(la.transpose(winv), la.matvec(R.pairing, a))) for a in R.roots}
        assert moved == {tuple(la.matvec(R.pairing, a)) for a in roots}


def test_json_round_trip():
    R = builtin_root_datum("SL(3)")
    assert RootDatum.from_json(R.to_json()) == R


def test_ambient_coordinates_round_trip():
    R = builtin_root_datum("SL(3)")
    x = (2, -1, -1)
    assert tuple(R.to_ambient(R.from_ambient(x))) == x
