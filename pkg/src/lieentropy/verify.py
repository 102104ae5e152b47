"""Built-in cross-module property suite run by ``lieentropy verify``.

Each property returns a residual and the threshold it must stay under, so
the report shows how much headroom a build has, not just pass/fail.  All
sampling is seeded; two runs of the same level give the same report.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import engine
from .groups import SemisimpleEndo, integer_det
from .jordan import check_invariants, invariant_residuals, multiplicative_jordan
from .oracle.adjoint import adjoint_matrix, verify_adjoint_jordan
from .oracle.estimate import estimate_entropy

CAT = ((2, 1), (1, 1))
CAT_ENTROPY = math.log((3 + math.sqrt(5)) / 2)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    residual: float
    threshold: float
    detail: str = ""
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "threshold": self.threshold,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyReport:
    level: str
    results: tuple[PropertyResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"level": self.level, "ok": self.ok, "properties": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def random_integer_matrix(rng, size: int, bound: int = 3) -> np.ndarray:
    """Integer matrix with entries in [-bound, bound] and nonzero determinant."""
    while True:
        m = rng.integers(-bound, bound + 1, size=(size, size))
        if integer_det(m) != 0:
            return m


def random_invertible(rng, size: int, max_cond: float = 1e4) -> np.ndarray:
    while True:
        m = rng.normal(size=(size, size))
        if np.linalg.cond(m) <= max_cond:
            return m


def _max(values) -> float:
    return float(max(values, default=0.0))


def product_formula(rng, trials: int = 100) -> tuple[float, str]:
    res = []
    for _ in range(trials):
        a = random_integer_matrix(rng, int(rng.integers(1, 4)))
        b = random_integer_matrix(rng, int(rng.integers(1, 4)))
        whole = engine.torus_entropy(scipy.linalg.block_diag(a, b)).value
        res.append(abs(whole - engine.torus_entropy(a).value - engine.torus_entropy(b).value))
    return _max(res), f"{trials} block-diagonal pairs"


def power_formula(rng, trials: int = 100) -> tuple[float, str]:
    # residual is |h(A^k) - k h(A)| / k, compared against 1e-8
    res = []
    for _ in range(trials):
        a = random_integer_matrix(rng, int(rng.integers(1, 4)))
        h = engine.torus_entropy(a).value
        for k in (2, 3, 4, 5):
            hk = engine.torus_entropy(np.linalg.matrix_power(a, k)).value
            res.append(abs(hk - k * h) / k)
    return _max(res), f"{trials} matrices, k = 2..5"


def conjugation_invariance(rng, trials: int = 50) -> tuple[float, str]:
    res = []
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        a = rng.normal(size=(n, n)) * 2
        p = random_invertible(rng, n, 1e2)
        conj = p @ a @ np.linalg.inv(p)
        try:
            h = engine.bowen_formula(a).value
        except Exception:  # singular draws carry no information here
            continue
        res.append(abs(engine.bowen_formula(conj).value - h))
    return _max(res), f"{trials} conjugates, cond(P) <= 1e2"


def factor_inequality(rng, trials: int = 50) -> tuple[float, str]:
    # residual is the largest excess h(D) - h(full); must stay <= 1e-9
    worst = -math.inf
    for _ in range(trials):
        a = random_integer_matrix(rng, int(rng.integers(1, 3)))
        d = random_integer_matrix(rng, int(rng.integers(1, 3)))
        c = rng.integers(-3, 4, size=(a.shape[0], d.shape[0]))
        full = np.block([[a, c], [np.zeros((d.shape[0], a.shape[0]), dtype=int), d]])
        worst = max(worst, engine.torus_entropy(d).value - engine.torus_entropy(full).value)
    return worst, f"{trials} block-triangular maps"


def jordan_invariants(rng, trials: int = 200) -> tuple[float, str]:
    worst, failures = 0.0, 0
    for _ in range(trials):
        m = random_invertible(rng, int(rng.integers(1, 6)))
        mj = multiplicative_jordan(m)
        if not all(check_invariants(mj).values()):
            failures += 1
        r = invariant_residuals(mj)
        worst = max(worst, r["reconstruction"], r["commute_eh"], r["commute_eu"], r["commute_hu"])
    return (worst if failures == 0 else math.inf), f"{trials} matrices, {failures} failing"


def adjoint_jordan(rng, trials: int = 200) -> tuple[float, str]:
    worst = 0.0
    for _ in range(trials):
        g = random_invertible(rng, int(rng.integers(1, 6)))
        _, residuals = verify_adjoint_jordan(g)
        worst = max(worst, *residuals.values())
    return worst, f"{trials} matrices"


def adjoint_homomorphism(rng, trials: int = 50) -> tuple[float, str]:
    res = []
    for _ in range(trials):
        n = int(rng.integers(1, 5))
        g1, g2 = random_invertible(rng, n, 1e2), random_invertible(rng, n, 1e2)
        lhs = adjoint_matrix(g1 @ g2)
        rhs = adjoint_matrix(g1) @ adjoint_matrix(g2)
        res.append(np.linalg.norm(lhs - rhs, 2) / np.linalg.norm(rhs, 2))
    return _max(res), f"{trials} pairs"


def semisimple_strictness(rng) -> tuple[float, str]:
    # residual is the semisimple entropy, which must be 0; Bowen on Ad must be positive
    g = np.diag([2.0, 0.5])
    h = engine.semisimple_entropy(SemisimpleEndo(g)).value
    bowen = engine.bowen_formula(adjoint_matrix(g)).value
    if bowen <= 0:
        return math.inf, "Bowen bound on Ad(g) is not positive"
    return h, f"Bowen bound on Ad(g) = {bowen:.6f}"


def certificate_consistency(rng, trials: int = 100) -> tuple[float, str]:
    res = []
    for _ in range(trials):
        cert = engine.torus_entropy(random_integer_matrix(rng, int(rng.integers(1, 5))))
        if cert.value < 0:
            return math.inf, "negative entropy"
        res.append(abs(cert.value - math.fsum(c.log_modulus for c in cert.contributions)))
    return _max(res), f"{trials} certificates"


def oracle_cat(rng) -> tuple[float, str]:
    est = estimate_entropy(CAT, n_max=14, epsilon=0.05, grid_resolution=200)
    return abs(est.extrapolated - CAT_ENTROPY), f"estimate {est.extrapolated:.6f}"


def oracle_doubling(rng) -> tuple[float, str]:
    est = estimate_entropy([[2]], n_max=14, epsilon=0.05, grid_resolution=100_000)
    return abs(est.extrapolated - math.log(2)), f"estimate {est.extrapolated:.6f}"


FAST = (
    ("product_formula", product_formula, 1e-9),
    ("power_formula", power_formula, 1e-8),
    ("conjugation_invariance", conjugation_invariance, 1e-6),
    ("factor_inequality", factor_inequality, 1e-9),
    ("certificate_consistency", certificate_consistency, 1e-12),
    ("jordan_invariants", jordan_invariants, 1e-8),
    ("adjoint_jordan", adjoint_jordan, 1e-6),
    ("adjoint_homomorphism", adjoint_homomorphism, 1e-8),
    ("semisimple_strictness", semisimple_strictness, 0.0),
)
FULL = FAST + (
    ("oracle_cat_map", oracle_cat, 0.1),
    ("oracle_doubling", oracle_doubling, 0.1),
)


def run_verify(level: str = "fast", seed: int = 0) -> VerifyReport:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    results = []
    for name, fn, threshold in FAST if level == "fast" else FULL:
        rng = np.random.default_rng([seed, len(results)])
        start = time.perf_counter()
        try:
            residual, detail = fn(rng)
        except Exception as exc:  # a crash is a failed property, not a crashed report
            residual, detail = math.inf, f"{type(exc).__name__}: {exc}"
        results.append(
            PropertyResult(
                name,
                residual <= threshold,
                float(residual),
                threshold,
                detail,
                time.perf_counter() - start,
            )
        )
    return VerifyReport(level, tuple(results))
