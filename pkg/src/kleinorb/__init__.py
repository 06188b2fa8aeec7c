"""Klein-group orbifolds of the affine sl2 vertex operator algebra L(k,0).

Exact computations with graded pieces of the integrable modules L(k,i), their
Klein-isotypic and twisted decompositions, the Z2-orbifold fusion ring, the
classification lists for L(k,0)^K and for the commutant realized by free
fermions.
"""

from .affine import (
    irreducible_graded_dims,
    isotypic_at_degree,
    k_isotypic_dims,
    verify_fixed_generators,
)
from .classify import classify_commutant, classify_orbifold, cross_check, descriptor
from .fusion import extension_lift, fuse, parse_label, sign_rule, verify_ring
from .scalars import GaussRational, Rational
from .twisted import stabilizer, twisted_component_dims, twisted_mode, twisted_weight

__all__ = [
    "GaussRational",
    "Rational",
    "classify_commutant",
    "classify_orbifold",
    "cross_check",
    "descriptor",
    "extension_lift",
    "fuse",
    "irreducible_graded_dims",
    "isotypic_at_degree",
    "k_isotypic_dims",
    "parse_label",
    "sign_rule",
    "stabilizer",
    "twisted_component_dims",
    "twisted_mode",
    "twisted_weight",
    "verify_fixed_generators",
    "verify_ring",
]
