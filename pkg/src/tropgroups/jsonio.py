"""JSON encodings of the library's inputs and outputs.

Rationals travel as strings ("3", "-1/2"), scalars in the t-expression
grammar, and +inf as "inf".
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .building import BuildingPoint
from .chains import MarkedFan
from .polyhedra import Cone, ExtendedPoint, Fan
from .stacky import BuildingCone, BuildingFan, StackyFan, Witness
from .valfield import ExtRat, ValuedScalar, parse_scalar
from .valmatrix import ValuedMatrix

__all__ = [
    "rational",
    "rat_str",
    "matrix_from_json",
    "fan_from_json",
    "stacky_fan_from_json",
    "building_fan_from_json",
    "jsonable",
]


def rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    return Fraction(str(x).strip())


def rat_str(x) -> str:
    return str(Fraction(x))


def rat_matrix(rows) -> list[list[Fraction]]:
    return [[rational(x) for x in r] for r in rows]


def matrix_from_json(data: dict) -> ValuedMatrix:
    d = int(data.get("d", 1))
    rows = data["entries"]
    m = ValuedMatrix.parse(rows, d)
    if "n" in data and int(data["n"]) != m.n:
        raise ValueError("field 'n' does not match the number of rows")
    return m


def fan_from_json(data: dict) -> Fan:
    return Fan(data["rays"], data["cones"], data.get("lattice_rank"), basis=data.get("basis"))


def stacky_fan_from_json(data: dict, fan: Fan | None = None) -> StackyFan:
    fan = fan or fan_from_json(data)
    pairing = data.get("pairing")
    pairing = tuple(tuple(int(x) for x in r) for r in pairing) if pairing else None
    kummer = {}
    raw = data.get("kummer") or []
    if raw and len(raw) != len(fan.generating):
        raise ValueError("need one Kummer basis per listed cone")
    for key, basis in zip(fan.generating, raw):
        kummer[key] = tuple(tuple(rational(x) for x in r) for r in basis)
    if not raw:
        return StackyFan.trivial(fan, pairing)
    return StackyFan(fan, kummer, pairing)


def building_fan_from_json(data: dict) -> BuildingFan:
    rays = data["rays"]
    r = data.get("lattice_rank") or len(rays[0])
    cones = []
    for spec, g in zip(data["cones"], data["apartment"]):
        cones.append(BuildingCone(rat_matrix(g), Cone([rays[i] for i in spec], (), r)))
    witnesses = [Witness(tuple(w["pair"]), tuple(map(tuple, rat_matrix(w["apartment"]))),
                         tuple(tuple(v) for v in w["rays"]), tuple(w["face_i"]), tuple(w["face_j"]))
                 for w in data.get("witnesses", [])]
    return BuildingFan(cones, witnesses)


def chain_fan_from_json(data: dict) -> MarkedFan:
    return MarkedFan.from_json(data)


def point_from_json(data: dict) -> BuildingPoint:
    return BuildingPoint.from_json(data)


def jsonable(x: Any) -> Any:
    """Turn library values into JSON-ready structures with exact strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, ExtRat, ValuedScalar)):
        return str(x)
    if isinstance(x, ValuedMatrix):
        return x.to_strings()
    if isinstance(x, Cone):
        out = {"rays": [list(r) for r in x.rays]}
        if x.lineality:
            out["lineality"] = [list(v) for v in x.lineality]
        return out
    if isinstance(x, ExtendedPoint):
        return {"face": jsonable(x.face), "finite": jsonable(x.finite),
                "projection": [list(r) for r in x.projection]}
    if isinstance(x, BuildingPoint):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot encode {type(x).__name__}")


def scalar_list(values, d: int = 1) -> list[ValuedScalar | None]:
    """Parse node parameters; "inf", null or "0" mark a non-smoothed node."""
    out = []
    for v in values:
        if v is None or str(v).strip() in ("inf", "non-smoothed"):
            out.append(None)
        else:
            s = parse_scalar(str(v), d)
            out.append(None if s.is_zero else s)
    return out
