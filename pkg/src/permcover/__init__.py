"""Covering radii of permutation group codes under the l-infinity metric.

Closed-form values and bounds for cyclic, dihedral, and block-rotation
product codes; constructive lower-bound witnesses; exact solvers (brute
force and a restricted branch-and-bound); and relabeling extrema.
"""
from .formulas import (
    BoundsInterval,
    dn_bounds,
    dn_weak_lower,
    lmax_cyclic,
    lmax_pq,
    lmax_product,
    lmin_cyclic_lower,
    r_cyclic,
    r_pq,
    r_product,
)
from .groups import (
    FactorProfile,
    GroupCode,
    code_from_descriptor,
    make_cyclic,
    make_dihedral,
    make_product,
    relabel,
)
from .perms import (
    Perm,
    compose,
    distance_to_code,
    format_perm,
    inverse,
    is_r_exposed,
    linf_distance,
    parse_cycles,
    parse_perm,
)
from .solver import (
    RadiusResult,
    RelabelExtrema,
    radius_auto,
    radius_bruteforce,
    radius_restricted,
    relabel_extrema,
)
from .witnesses import (
    WitnessBundle,
    verify_witness,
    witness_dn,
    witness_dn_refined,
    witness_lmax,
    witness_pq,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsInterval",
    "FactorProfile",
    "GroupCode",
    "Perm",
    "RadiusResult",
    "RelabelExtrema",
    "WitnessBundle",
    "code_from_descriptor",
    "compose",
    "distance_to_code",
    "dn_bounds",
    "dn_weak_lower",
    "format_perm",
    "inverse",
    "is_r_exposed",
    "linf_distance",
    "lmax_cyclic",
    "lmax_pq",
    "lmax_product",
    "lmin_cyclic_lower",
    "make_cyclic",
    "make_dihedral",
    "make_product",
    "parse_cycles",
    "parse_perm",
    "r_cyclic",
    "r_pq",
    "r_product",
    "radius_auto",
    "radius_bruteforce",
    "radius_restricted",
    "relabel",
    "relabel_extrema",
    "verify_witness",
    "witness_dn",
    "witness_dn_refined",
    "witness_lmax",
    "witness_pq",
]
