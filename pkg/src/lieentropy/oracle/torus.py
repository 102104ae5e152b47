"""Points and orbits on the torus R^p / Z^p."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import dimension_mismatch, InputError
from ..linalg import as_integer_matrix


def reduce_mod1(x) -> np.ndarray:
    y = np.mod(np.asarray(x, dtype=float), 1.0)
    # np.mod can return exactly 1.0 for tiny negative inputs
    y[y >= 1.0] = 0.0
    return y


def torus_distance(x, y) -> float:
    """Max over coordinates of the wrap-around distance min(|d|, 1 - |d|)."""
    d = np.abs(reduce_mod1(x) - reduce_mod1(y))
    return float(np.max(np.minimum(d, 1.0 - d), initial=0.0))


def torus_iterate(t, x, n: int, exact: bool = False) -> np.ndarray:
    """Apply x -> T x mod 1 exactly ``n`` times.

    Float inputs are dyadic rationals, so ``exact=True`` runs the orbit in
    rational arithmetic and rounds only the final point.
    """
    t = as_integer_matrix(t)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if t.shape[0] != x.shape[0]:
        raise dimension_mismatch(f"map of size {t.shape[0]} on a point of dimension {x.shape[0]}")
    if n < 0:
        raise InputError("iteration count must be nonnegative")
    if exact:
        rows = t.tolist()
        pt = [Fraction(float(v)) % 1 for v in x]
        for _ in range(n):
            pt = [sum((a * v for a, v in zip(row, pt)), Fraction(0)) % 1 for row in rows]
        return np.array([float(v) for v in pt])
    y = reduce_mod1(x)
    tf = t.astype(float)
    for _ in range(n):
        y = reduce_mod1(tf @ y)
    return y
