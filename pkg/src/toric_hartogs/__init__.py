"""Exact toric geometry for deciding the Hartogs phenomenon on hypersurface complements."""

from .cohomology import cohomology_table, euler_rr_check, negative_support_complex, verify_dp_vanishing
from .divisor import (
    TDivisor,
    cone_functionals,
    divisor_at_infinity,
    is_effective,
    is_nef,
    polytope_of_divisor,
    prime_divisor,
    principal_divisor,
)
from .engine import decide, decide_divisor, equivalence_report, hirzebruch_closed_forms
from .lattice import (
    Fan,
    builtin_fan,
    fan_from_selector,
    hirzebruch,
    primitive,
    product_p1_p1,
    projective_space,
    validate_fan,
    walls,
)
from .polytope import (
    LatticePolytope,
    LaurentSupport,
    dim,
    lattice_points,
    minkowski_sum,
    mixed_volume,
    newton_polytope,
    normalized_volume,
    support_function,
)
from .ring import betti_numbers, build_ring

__all__ = [
    "Fan", "LatticePolytope", "LaurentSupport", "TDivisor",
    "betti_numbers", "build_ring", "builtin_fan", "cohomology_table", "cone_functionals",
    "decide", "decide_divisor", "dim", "divisor_at_infinity", "equivalence_report",
    "euler_rr_check", "fan_from_selector", "hirzebruch", "hirzebruch_closed_forms", "is_effective", "is_nef",
    "lattice_points", "minkowski_sum", "mixed_volume", "negative_support_complex",
    "newton_polytope", "normalized_volume", "polytope_of_divisor", "prime_divisor",
    "primitive", "principal_divisor", "product_p1_p1", "projective_space", "support_function", "validate_fan", "verify_dp_vanishing",
    "walls",
]
