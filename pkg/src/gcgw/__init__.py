"""Exact generalized complex geometry: structures, transverse complexes and SGH bundles."""
from .exterior import (
    BasedSpace,
    ContractViolation,
    GaussianRational,
    GeneralizedVector,
    Multivector,
    StructuralError,
    gq,
    wedge,
)
from .lie import InvalidLieAlgebra, LieStructure

__version__ = "0.1.0"

__all__ = [
    "BasedSpace",
    "ContractViolation",
    "GaussianRational",
    "GeneralizedVector",
    "InvalidLieAlgebra",
    "LieStructure",
    "Multivector",
    "StructuralError",
    "gq",
    "wedge",
    "__version__",
]
