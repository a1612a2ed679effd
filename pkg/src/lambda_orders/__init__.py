"""Finite etale Lambda-rings over Q described by Z/r-sets: factorization
criterion, algebra reconstruction and maximal Lambda-orders."""
from .algebra import LambdaAlgebra, algebra_from_mset, component_fields, is_field_check, points
from .cyclotomic import CycloElt, GroupAlgebraElt, crt_join, crt_split, cyclotomic_poly
from .errors import (
    AssociativityViolated,
    IdentityAxiomViolated,
    InconsistentPresentation,
    InvalidInput,
    LambdaOrdersError,
    LevelMismatch,
    NotAUnit,
    NotContained,
    NotEtale,
    RankTooLarge,
    SubgroupInvalid,
)
from .factorization import (
    FrobActionPresentation,
    Verdict,
    Witness,
    brute_force_factor,
    build_mset,
    check_factors,
)
from .lattice import IntLattice, hnf, index, preimage_lattice
from .mset import (
    MSet,
    MSetMap,
    coproduct,
    free_cover,
    is_isomorphic,
    lift,
    make_mset,
    minimal_level,
    product,
    regular_mset,
    trivial_mset,
    zero_image,
)
from .orders import (
    LambdaOrder,
    intersection_check,
    maximal_order,
    maximality_certificate,
    verify_order,
)

__version__ = "0.1.0"
