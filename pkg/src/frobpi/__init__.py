"""Exact graded algebras of rank-4 relative Frobenius pairs.

The package builds the graded algebra attached to a commutative rank-4
Frobenius algebra degree by degree, entirely in exact arithmetic over Q,
a prime field, or Q(u), and cross-checks its dimension, center, and
split-case data against independent combinatorial computations.
"""

from .fields import FP, QQ, QU, field_from_descriptor
from .frobenius import (
    CATALOG_NAMES,
    REJECT_NAMES,
    CommAlgebra,
    FrobeniusPair,
    algebra_from_json,
    algebra_to_json,
    catalog,
    deformation,
    is_frobenius,
    make_frobenius,
    specialize_pair,
)
from .engine import GradedAlgebra, PiElement, build
from .center import (
    center_degree,
    center_dims,
    expected_center_dim,
    is_central,
    sigma_surjectivity_check,
)
from . import splitcase

__version__ = "0.1.0"

__all__ = [
    "FP",
    "QQ",
    "QU",
    "field_from_descriptor",
    "CATALOG_NAMES",
    "REJECT_NAMES",
    "CommAlgebra",
    "FrobeniusPair",
    "algebra_from_json",
    "algebra_to_json",
    "catalog",
    "deformation",
    "is_frobenius",
    "make_frobenius",
    "specialize_pair",
    "GradedAlgebra",
    "PiElement",
    "build",
    "center_degree",
    "center_dims",
    "expected_center_dim",
    "is_central",
    "sigma_surjectivity_check",
    "splitcase",
    "__version__",
]
