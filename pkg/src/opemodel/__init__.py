"""Folk model structure on finite colored operads."""
from .categories import (
    Arrow,
    CategoryFunctor,
    FiniteCategory,
    j_lower,
    j_upper,
    preserves_classes,
    slice_from_cat,
    slice_to_cat,
)
from .core import (
    FiniteOperad,
    Morphism,
    Profile,
    ValidationReport,
    apply_symmetry,
    compose,
    iso_classes,
    isomorphisms,
    validate,
)
from .errors import *  # noqa: F401,F403
from .factorization import Factorization, factor_cof_trivfib, factor_trivcof_fib
from .functors import (
    NaturalIso,
    OperadFunctor,
    classify,
    compose_functors,
    identity_functor,
    is_cofibration,
    is_essentially_surjective,
    is_fibration,
    is_fully_faithful,
    is_trivial_cofibration,
    is_trivial_fibration,
    is_weak_equivalence,
    quasi_inverse,
    validate_functor,
)
from .generators import generating_cofibrations, generating_trivial_cofibrations
from .lifting import LiftingSquare, has_rlp, solve_lift_trivcof, solve_lift_trivfib
from .perms import interchange
from .serialize import parse_document, serialize_document
