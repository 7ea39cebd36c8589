"""Exact arithmetic for 2-divisible sets of disjoint (-2)-curves on K3 surfaces in characteristic 2.

Subpackages: ``lattice`` (even lattices, discriminant forms), ``gf`` (finite
fields of characteristic 2 and their polynomials), ``fibration``
(quasi-elliptic Weierstrass models and Picard models), ``singularity``
(double points) and ``catalog`` (tables and the realizability matrix).
"""

from ._accel import HAVE_NUMBA, USE_NUMBA, default_backend
from .lattice import IntegerLattice, build_lattice, discriminant_form, is_two_divisible

__version__ = "0.1.0"

__all__ = [
    "HAVE_NUMBA",
    "USE_NUMBA",
    "IntegerLattice",
    "__version__",
    "build_lattice",
    "default_backend",
    "discriminant_form",
    "is_two_divisible",
]
