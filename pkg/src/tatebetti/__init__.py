"""Betti, Tate-Betti, Bass and Tate-Bass numbers over Artinian local rings.

Typical use::

    from tatebetti import ring_from_relations, residue_field, complete_resolution

    R = ring_from_relations(["x", "y"], ["x^2", "y^2"], p=101)
    T = complete_resolution(residue_field(R), -3, 3)
    T.tate_betti   # {-3: 3, -2: 2, -1: 1, 0: 1, 1: 2, 2: 3, 3: 4}
"""

__version__ = "0.1.0"

from .artinalg import (
    FinModule,
    LocalAlgebra,
    ModuleMap,
    free_module,
    hom_module,
    is_isomorphic,
    matlis_dual,
    module_from_presentation,
    projective_cover,
    random_module,
    residue_field,
    ring_invariants,
    strip_free_summands,
    syzygy,
    tensor_module,
)
from .exactfield import PrimeField
from .period import (
    detect_complex_periodicity,
    hypersurface_dichotomy,
    invariant_periodicity,
)
from .polyring import PolyRing, buchberger, build_quotient_algebra, normal_form, parse_poly
from .resolve import (
    balance_check,
    bass_numbers,
    check_total_acyclicity,
    complete_resolution,
    cosyzygy_extend,
    ext_hat,
    minimal_resolution,
    tate_bass,
    tate_betti,
    tor_hat,
)


__all__ = [
    "FinModule",
    "LocalAlgebra",
    "ModuleMap",
    "PolyRing",
    "PrimeField",
    "balance_check",
    "bass_numbers",
    "buchberger",
    "build_quotient_algebra",
    "check_total_acyclicity",
    "complete_resolution",
    "cosyzygy_extend",
    "detect_complex_periodicity",
    "ext_hat",
    "free_module",
    "hom_module",
    "hypersurface_dichotomy",
    "invariant_periodicity",
    "is_isomorphic",
    "matlis_dual",
    "minimal_resolution",
    "module_from_presentation",
    "normal_form",
    "parse_poly",
    "projective_cover",
    "random_module",
    "residue_field",
    "ring_from_relations",
    "ring_invariants",
    "strip_free_summands",
    "syzygy",
    "tate_bass",
    "tate_betti",
    "tensor_module",
    "tor_hat",
]


def ring_from_relations(variables, relations, p=101, order="degrevlex") -> LocalAlgebra:
    """Build k[variables]/(relations) from polynomial strings."""
    P = PolyRing(variables, p, order)
    polys = [P.parse(r) for r in relations] or [P.zero()]
    return build_quotient_algebra(buchberger(polys))
