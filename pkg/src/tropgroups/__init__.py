"""Exact tropicalization toolkit for reductive groups.

Valued fields Q(t^(1/d)), lattices and Smith normal form, polyhedral and
stacky fans, root data, the type A building via Goldman–Iwahori norms,
Cartan decompositions and decorated metric chains.
"""
from .valfield import INF, ExtRat, ValuedScalar, parse_scalar, rebase, valuation
from .zlattice import FiniteAbelianGroup, Lattice, cokernel, is_unimodular_subset, smith_normal_form
from .polyhedra import (
    Cone, ExtendedPoint, Fan, ToricMonoid, canonical_compactification_strata, dual_cone, faces,
    gordan_monoid, orbit_cone_table, star, trop_toric_point, trop_torus_point,
)
from .rootdata import (
    RootDatum, WeylGroup, apartment_intersection, builtin_root_datum, dominant_representative,
    validate_root_datum, weyl_chamber, weyl_fan, weyl_group,
)
from .stacky import (
    BuildingCone, BuildingFan, KummerData, StackyFan, is_smooth_stacky_cone, one_parameter_limit_exists,
    restrict_kummer_to_face, stabilizer_group, validate_stacky_fan, weyl_equivariance_check,
)
from .valmatrix import ValuedMatrix
from .building import (
    BuildingPoint, GINorm, alpha, evaluate_norm, normalize_projective, norms_equal, pi, trop_build,
)
from .cartan import CartanForm, cartan_decompose, functoriality_check, theorem_d_check, trop_spherical
from .chains import MarkedFan, MetricChain, realize, trop_family, validate_decoration

__version__ = "0.1.0"
