import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CAT = [[2, 1], [1, 1]]
GOLDEN = (3 + math.sqrt(5)) / 2
CAT_ENTROPY = 0.9624236501  # log of the larger root of x^2 - 3x + 1


def lu_det(m) -> float:
    """Determinant by partial-pivot Gaussian elimination (independent of LAPACK)."""
    a = [list(map(float, row)) for row in np.asarray(m, dtype=float)]
    n = len(a)
    det = 1.0
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[piv][k] == 0.0:
            return 0.0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def exact_det(m) -> int:
    """Integer determinant by exact rational elimination."""
    a = [[Fraction(int(x)) for x in row] for row in np.asarray(m).tolist()]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return int(det)


def random_invertible(rng, n, max_cond=1e4):
    while True:
        m = rng.normal(size=(n, n))
        if np.linalg.cond(m) <= max_cond:
            return m


def random_integer(rng, n, bound=3):
    while True:
        m = rng.integers(-bound, bound + 1, size=(n, n))
        if exact_det(m) != 0:
            return m


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
