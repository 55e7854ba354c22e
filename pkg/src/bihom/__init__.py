"""Exact structure-constant computations for BiHom-Novikov-Poisson algebras."""

from .constructions import (
    AdmissibilityReport,
    ConstructionFailed,
    MapsDontCommute,
    NotCommutativeAssociative,
    NotDerivation,
    NotFixed,
    NotMorphism,
    PerturbationElement,
    admissibility_test,
    bracket_pushforward_checks,
    commutator_bracket,
    derivation_bhnp,
    derivation_perturbed,
    perturb_double,
    perturb_mu,
    perturb_thm1,
    perturb_thm2,
    tensor_product,
    yau_twist,
    yau_twist_power,
)
from .core import (
    BilinearOp,
    BracketAlgebra,
    CheckReport,
    InvalidBundle,
    OneProductAlgebra,
    TwoProductAlgebra,
    Witness,
    check_maps_commute,
    check_multiplicative,
    eval_op,
    validate_bundle,
)
from .families import gen_nilpotent, gen_truncated_poly, gen_zero
from .identities import (
    SUITES,
    InvariantViolation,
    NotClassical,
    PrereqFailed,
    check_bhnp_compat,
    check_bhnp_full,
    check_bihom_associative,
    check_bihom_commutative,
    check_bihom_leibniz,
    check_bihom_lie,
    check_bihom_novikov,
    check_bihom_poisson,
    check_classical_novikov,
    check_classical_novikov_poisson,
    check_left_bihom_assoc,
    run_suite,
)
from .linalg import DimMismatch, Singular, fixed_subspace, mat_inverse, mat_pow

__version__ = "0.1.0"
