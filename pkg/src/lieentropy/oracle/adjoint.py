"""Adjoint action of GL(n) on its Lie algebra and the conjugation dynamics."""

from __future__ import annotations

import numpy as np

from ..config import DEFAULT, Tolerances
from ..errors import dimension_mismatch, singular
from ..jordan import multiplicative_jordan
from ..linalg import as_real_matrix, is_invertible, opnorm


def adjoint_matrix(g, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Matrix of X -> g X g^-1 on n x n matrices, basis E_11, E_12, ..., E_nn.

    With row-major vectorisation vec(A X B) = kron(A, B.T) vec(X).
    """
    g = as_real_matrix(g, "g")
    if not is_invertible(g, tol):
        raise singular("adjoint of a singular matrix")
    return np.kron(g, np.linalg.inv(g).T)


def verify_adjoint_jordan(g, tol: Tolerances = DEFAULT, threshold: float = 1e-6):
    """Check that Ad carries the Jordan factors of g to those of Ad(g).

    Returns ``(ok, residuals)`` where residuals are relative spectral-norm
    gaps for the elliptic, hyperbolic and unipotent factors.
    """
    g = as_real_matrix(g, "g")
    parts = multiplicative_jordan(g, tol)
    lifted = multiplicative_jordan(adjoint_matrix(g, tol), tol)
    residuals = {}
    for name, small, big in zip(
        ("elliptic", "hyperbolic", "unipotent"), parts.factors(), lifted.factors()
    ):
        expected = adjoint_matrix(small, tol)
        residuals[name] = opnorm(big - expected) / max(opnorm(expected), 1.0)
    return all(r <= threshold for r in residuals.values()), residuals


def conjugation_recurrent_membership(g, x, tol: float = 1e-8, tolerances: Tolerances = DEFAULT) -> bool:
    """Is x in the recurrent set of C_g, i.e. does x commute with h and u?"""
    g = as_real_matrix(g, "g")
    x = as_real_matrix(x, "x")
    if g.shape != x.shape:
        raise dimension_mismatch(f"shape mismatch {g.shape} vs {x.shape}")
    mj = multiplicative_jordan(g, tolerances)
    nx = opnorm(x)
    for part in (mj.hyperbolic, mj.unipotent):
        if opnorm(x @ part - part @ x) > tol * nx * opnorm(part):
            return False
    return True
