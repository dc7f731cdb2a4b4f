"""Free operads, presentations, bounded equality and the BV tensor product."""
from .bv import (
    bv_map,
    bv_presentation,
    certify_unit,
    left_gen,
    product_comparison,
    realize_unary,
    right_gen,
    unit_model,
)
from .presentation import (
    ColoredCollection,
    Model,
    Presentation,
    PresentationMap,
    free_finite_operad,
    presentation_map_of,
    presentation_of,
    tautological_model,
)
from .pushout import (
    corner_map_essentially_surjective,
    corner_map_object_check,
    corner_map_objects,
    pushout,
    set_pushout,
)
from .rewrite import Decision, Verdict, decide_equal, neighbors
from .terms import (
    Leaf,
    Node,
    Perm,
    canonical,
    corolla,
    graft,
    normal_form,
    profile,
    size,
)
