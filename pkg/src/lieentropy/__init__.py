"""Topological entropy of Lie group endomorphisms.

The engine reduces a group endomorphism to its action on the toral part
and applies Bowen's formula there; the oracle package checks those values
by brute force on tori.
"""

from .config import DEFAULT, Tolerances
from .engine import (
    EntropyCertificate,
    bowen_formula,
    compute,
    conjectural_general_entropy,
    torus_entropy,
)
from .errors import BudgetExceeded, InputError, LieEntropyError, NumericError, ValidationFailed
from .jordan import MultiplicativeJordan, multiplicative_jordan, recurrent_subspace
from .serialization import Descriptor, load_descriptor, parse_descriptor

__all__ = [
    "DEFAULT",
    "BudgetExceeded",
    "Descriptor",
    "EntropyCertificate",
    "InputError",
    "LieEntropyError",
    "MultiplicativeJordan",
    "NumericError",
    "Tolerances",
    "ValidationFailed",
    "bowen_formula",
    "compute",
    "conjectural_general_entropy",
    "load_descriptor",
    "multiplicative_jordan",
    "parse_descriptor",
    "recurrent_subspace",
    "torus_entropy",
]
