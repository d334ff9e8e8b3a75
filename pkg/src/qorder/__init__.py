"""Finite quantaloid-enriched semicategories: classification, Cauchy completion, change of base."""

from .errors import BudgetExceeded, InputError, LatticeError, QOrderError
from .fixtures import get_fixture, n3, p2, q2, q3, trop
from .lattice import FiniteLattice, ValidationReport, validate_lattice
from .matrix import QMatrix, TypedSet, compose, mat_extension, mat_lifting
from .quantaloid import ArrowRef, Quantaloid, build_idm, split_monad, validate_quantaloid
from .structures import EnrichedStructure, ObjectMap, SemiDistributor, classify

__all__ = [
    "ArrowRef",
    "BudgetExceeded",
    "EnrichedStructure",
    "FiniteLattice",
    "InputError",
    "LatticeError",
    "ObjectMap",
    "QMatrix",
    "QOrderError",
    "Quantaloid",
    "SemiDistributor",
    "TypedSet",
    "ValidationReport",
    "build_idm",
    "classify",
    "compose",
    "get_fixture",
    "mat_extension",
    "mat_lifting",
    "n3",
    "p2",
    "q2",
    "q3",
    "split_monad",
    "trop",
    "validate_lattice",
    "validate_quantaloid",
]
