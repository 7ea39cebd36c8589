"""Even lattices, discriminant forms and 2-divisibility."""

from .core import (
    Closure,
    DivisorClass,
    GlueData,
    HalfClassTest,
    IntegerLattice,
    LatticeError,
    TwoDivisibility,
    adjoin_glue,
    direct_sum,
    even_unimodular_admissible,
    glue,
    half_class_q_test,
    in_dual,
    is_two_divisible,
    is_two_divisible_ambient,
    orthogonal_complement,
    primitive_closure,
)
from .discriminant import (
    DiscriminantForm,
    discriminant_form,
    forms_match,
    gauss_signature,
    is_type_I,
    is_type_I_exhaustive,
    milgram_holds,
)
from .expr import ExprError, build_lattice, parse_lattice_expr

__all__ = [
    "Closure",
    "DiscriminantForm",
    "DivisorClass",
    "ExprError",
    "GlueData",
    "HalfClassTest",
    "IntegerLattice",
    "LatticeError",
    "TwoDivisibility",
    "adjoin_glue",
    "build_lattice",
    "direct_sum",
    "discriminant_form",
    "even_unimodular_admissible",
    "forms_match",
    "gauss_signature",
    "glue",
    "half_class_q_test",
    "in_dual",
    "is_two_divisible",
    "is_two_divisible_ambient",
    "is_type_I",
    "is_type_I_exhaustive",
    "milgram_holds",
    "orthogonal_complement",
    "parse_lattice_expr",
    "primitive_closure",
]
