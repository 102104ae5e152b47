"""Brute-force checks that do not go through the reduction theorems."""

from .adjoint import adjoint_matrix, conjugation_recurrent_membership, verify_adjoint_jordan
from .estimate import EntropyEstimate, estimate_entropy
from .liyorke import LiYorkeWitness, li_yorke_search
from .recurrence import RecurrenceResult, recurrence_check
from .torus import torus_distance, torus_iterate

__all__ = [
    "EntropyEstimate",
    "LiYorkeWitness",
    "RecurrenceResult",
    "adjoint_matrix",
    "conjugation_recurrent_membership",
    "estimate_entropy",
    "li_yorke_search",
    "recurrence_check",
    "torus_distance",
    "torus_iterate",
    "verify_adjoint_jordan",
]
