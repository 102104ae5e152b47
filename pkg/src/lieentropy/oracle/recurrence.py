"""Empirical recurrence of linear orbits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT, Tolerances
from ..errors import InputError, LieEntropyError, dimension_mismatch
from ..jordan import elliptic_invariant_gram, multiplicative_jordan
from ..linalg import as_real_matrix


@dataclass(frozen=True)
class RecurrenceResult:
    recurrent: bool
    best_n: int
    best_distance: float
    divergent: bool
    norm: str  # "gram" or "euclidean"

    def to_dict(self) -> dict:
        return {
            "recurrent": self.recurrent,
            "best_return": {"n": self.best_n, "distance": self.best_distance},
            "divergent": self.divergent,
            "norm": self.norm,
        }


def recurrence_gram(m, tol: Tolerances = DEFAULT):
    """Gram matrix of the elliptic part of ``m``, or None if it cannot be built."""
    try:
        return elliptic_invariant_gram(multiplicative_jordan(m, tol).elliptic, tol)
    except LieEntropyError:
        return None


def recurrence_check(
    m, x, N: int, delta: float, tol: Tolerances = DEFAULT, gram=None
) -> RecurrenceResult:
    """Does the orbit of ``x`` come back within ``delta`` of ``x`` in N steps?

    Distances use the Gram norm of the elliptic part when it exists (the
    norm in which the recurrent part of the orbit is an isometry).  The
    scan stops at the first return within ``delta``, or as soon as the
    orbit norm passes ``tol.divergence``.
    """
    m = as_real_matrix(m)
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != m.shape[0]:
        raise dimension_mismatch(f"matrix {m.shape} and vector of length {x.shape[0]}")
    if N < 1 or delta <= 0:
        raise InputError("need N >= 1 and delta > 0")
    if gram is None:
        gram = recurrence_gram(m, tol)
    norm_name = "euclidean" if gram is None else "gram"
    chol = np.linalg.cholesky(gram).T if gram is not None else np.eye(m.shape[0])

    y = x.copy()
    best_n, best = 0, math.inf
    for n in range(1, N + 1):
        y = m @ y
        if not np.all(np.isfinite(y)) or np.max(np.abs(y)) > tol.divergence:
            return RecurrenceResult(False, best_n, best, True, norm_name)
        d = float(np.linalg.norm(chol @ (y - x)))
        if d < best:
            best_n, best = n, d
            if d <= delta:
                return RecurrenceResult(True, n, d, False, norm_name)
    return RecurrenceResult(False, best_n, best, False, norm_name)
