from fractions import Fraction

import pytest

from tropgroups import _linalg as la
from tropgroups.polyhedra import Cone, Fan
from tropgroups.rootdata import builtin_root_datum, weyl_chamber, weyl_fan
from tropgroups.stacky import (BuildingCone, BuildingFan, KummerData, NotRelatable, StackyFan, Witness,
                               is_smooth_stacky_cone, kummer_agree_on, one_parameter_limit_exists,
                               restrict_kummer_to_face, stabilizer_group, validate_building_fan,
                               validate_stacky_fan, weyl_equivariance_check)
from tropgroups.zlattice import FiniteAbelianGroup, same_lattice

QUADRANT = Cone([(1, 0), (0, 1)])
HALF = [[Fraction(1, 2), 0], [0, 1]]
ID2 = [[1, 0], [0, 1]]
UNI = [[1, 1], [0, 1]]


def sl3_extension():
    R = builtin_root_datum("SL(3)")
    c = weyl_chamber(R)
    B = la.transpose(la.inverse(la.matmul(c.rays, R.pairing)))
    return KummerData(c, B, R.pairing)


def test_kummer_rejects_sublattices():
    with pytest.raises(ValueError):
        KummerData(QUADRANT, [[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        KummerData(QUADRANT, [[1, 1], [1, 1]])


def test_stabilizer_groups():
    assert stabilizer_group(KummerData(QUADRANT, HALF)) == FiniteAbelianGroup((2,))
    assert stabilizer_group(KummerData.trivial(QUADRANT)).is_trivial
    assert stabilizer_group(sl3_extension()) == FiniteAbelianGroup((3,))


def test_restriction_to_faces():
    K = KummerData(QUADRANT, HALF)
    ray = restrict_kummer_to_face(K, Cone([(1, 0)]))
    assert same_lattice(ray.basis, HALF)
    monoid, hb = ray.tilde_monoid()
    assert set(hb) == {(Fraction(1, 2), 0), (0, 1), (0, -1)}
    origin = restrict_kummer_to_face(K, Cone([], (), 2))
    assert origin.cone.dim == 0 and same_lattice(origin.basis, HALF)
    triv = restrict_kummer_to_face(KummerData.trivial(QUADRANT), Cone([(0, 1)]))
    assert stabilizer_group(triv).is_trivial
    with pytest.raises(ValueError):
        restrict_kummer_to_face(K, Cone([(1, 1)]))


def test_smoothness():
    pgl, sl = builtin_root_datum("PGL(3)"), builtin_root_datum("SL(3)")
    assert is_smooth_stacky_cone(KummerData.trivial(weyl_chamber(pgl), pgl.pairing))
    assert not is_smooth_stacky_cone(KummerData.trivial(weyl_chamber(sl), sl.pairing))
    assert is_smooth_stacky_cone(sl3_extension())
    assert not is_smooth_stacky_cone(KummerData.trivial(Cone([(1, 0), (1, 2)])))
    assert not is_smooth_stacky_cone(KummerData.trivial(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])))


def test_stacky_fan_validation():
    fan = Fan([(1, 0), (0, 1), (-1, 0)], [[0, 1], [1, 2]])
    assert validate_stacky_fan(StackyFan.trivial(fan)) == []
    single = Fan([(1, 0), (0, 1)], [[0, 1]])
    assert validate_stacky_fan(StackyFan(single, {frozenset({0, 1}): HALF})) == []
    # different superlattices along the shared ray e2: (1/2)Z x Z vs Z x (1/2)Z
    clash = StackyFan(fan, {frozenset({0, 1}): [[1, 0], [0, Fraction(1, 2)]],
                            frozenset({1, 2}): ID2})
    bad = validate_stacky_fan(clash)
    assert bad and bad[0].face == frozenset({1})
    # data that differ only in a direction transverse to the common ray still agree
    ok = StackyFan(fan, {frozenset({0, 1}): HALF, frozenset({1, 2}): ID2})
    assert validate_stacky_fan(ok) == []
    assert kummer_agree_on(KummerData(fan.cone([0, 1]), HALF), KummerData.trivial(fan.cone([1, 2])),
                           fan.cone([1]))


def test_weyl_equivariance():
    R = builtin_root_datum("PGL(3)")
    wf = weyl_fan(R)
    assert weyl_equivariance_check(wf, R)
    assert weyl_equivariance_check(StackyFan.trivial(wf, R.pairing), R)
    chamber = weyl_chamber(R)
    assert not weyl_equivariance_check(Fan.from_cones([chamber.rays], 2), R)
    stacky = StackyFan.trivial(wf, R.pairing)
    key = wf.maximal_cones[0]
    stacky.kummer[key] = HALF
    assert not weyl_equivariance_check(stacky, R)


def test_one_parameter_limits():
    fan = BuildingFan([BuildingCone(ID2, Cone([(1, 0), (1, 2)]))])
    assert one_parameter_limit_exists((ID2, (1, 2)), fan)
    assert not one_parameter_limit_exists((ID2, (-1, 0)), fan)
    assert one_parameter_limit_exists((ID2, (0, 0)), fan)
    # a different frame describing a point of the same apartment
    assert one_parameter_limit_exists(([[0, 1], [1, 0]], (2, 1)), fan)
    with pytest.raises(NotRelatable):
        one_parameter_limit_exists((UNI, (0, 1)), fan)


def test_building_fan_witnesses():
    a = BuildingCone(ID2, Cone([(1, 0), (1, 1)]))
    b = BuildingCone(UNI, Cone([(1, 0), (1, 1)]))
    good = Witness((0, 1), ID2, ((1, 0), (1, 1)), (0, 1), (0, 1))
    assert validate_building_fan(BuildingFan([a, b], [good])) == []
    assert validate_building_fan(BuildingFan([a, b], []))  # missing witness
    c = BuildingCone(UNI, Cone([(0, 1), (1, 1)]))
    wrong = Witness((0, 1), ID2, ((0, 1), (1, 1)), (0, 1), (0, 1))
    assert validate_building_fan(BuildingFan([a, c], [wrong]))
    overlap = BuildingFan([BuildingCone(ID2, Cone([(1, 0), (0, 1)])), BuildingCone(ID2, Cone([(1, 1), (0, 1)]))])
    assert validate_building_fan(overlap)
