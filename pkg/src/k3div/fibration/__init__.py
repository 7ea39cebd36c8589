"""Quasi-elliptic K3 fibrations in characteristic 2."""

from .picard import (
    SECTION,
    TWO_SECTION,
    FibrationReport,
    PicardModel,
    XiClass,
    analyze,
    base_model,
    build_picard_model,
    divisor_certificate,
    model_with_xi,
    nonreduced_fiber_divisor,
    parity_divisibility,
    parity_divisibility_lattice,
    xi_class,
)
from .weierstrass import (
    I0STAR,
    III,
    FiberDatum,
    FibrationError,
    OutOfScope,
    Place,
    WeierstrassQE,
    component_at_I0star,
    discriminant,
    height_ledger,
    intersection_PO,
    is_k3,
    ito_sigma,
    solve_height_ledger,
    torsion_section,
    validate_configuration,
    valuation_profile,
)

__all__ = [
    "I0STAR",
    "III",
    "SECTION",
    "TWO_SECTION",
    "FiberDatum",
    "FibrationError",
    "FibrationReport",
    "OutOfScope",
    "PicardModel",
    "Place",
    "WeierstrassQE",
    "XiClass",
    "analyze",
    "base_model",
    "build_picard_model",
    "component_at_I0star",
    "discriminant",
    "divisor_certificate",
    "height_ledger",
    "intersection_PO",
    "is_k3",
    "ito_sigma",
    "model_with_xi",
    "nonreduced_fiber_divisor",
    "parity_divisibility",
    "parity_divisibility_lattice",
    "solve_height_ledger",
    "torsion_section",
    "validate_configuration",
    "valuation_profile",
    "xi_class",
]
