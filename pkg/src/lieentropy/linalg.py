"""Dense linear algebra used by every other module.

Matrices are plain ``numpy`` arrays; the ``as_*`` helpers validate and
normalise them at the package boundary.  Spectra and subspaces get small
immutable wrappers so they can be compared and serialised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import DEFAULT, Tolerances
from .errors import InputError, dimension_mismatch, non_convergence


def as_real_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a square finite float64 array (a fresh, read-only copy)."""
    try:
        a = np.array(m, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not a real matrix: {exc}") from None
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    a.setflags(write=False)
    return a


def as_integer_matrix(m, name: str = "lattice map", allow_empty: bool = True) -> np.ndarray:
    """Return ``m`` as a square int64 array.  Floats must be integral."""
    raw = np.array(m, dtype=object) if not isinstance(m, np.ndarray) else m
    if raw.size == 0 and allow_empty:
        a = np.zeros((0, 0), dtype=np.int64)
        a.setflags(write=False)
        return a
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
        raise InputError(f"{name} must be square, got shape {raw.shape}")
    out = np.empty(raw.shape, dtype=np.int64)
    for idx, v in np.ndenumerate(raw):
        if isinstance(v, (bool, np.bool_)):
            raise InputError(f"{name} entry {idx} is a boolean")
        if isinstance(v, (int, np.integer)):
            out[idx] = int(v)
        elif isinstance(v, (float, np.floating)) and float(v).is_integer():
            out[idx] = int(v)
        else:
            raise InputError(f"{name} entry {idx}={v!r} is not an integer")
    out.setflags(write=False)
    return out


def opnorm(m: np.ndarray) -> float:
    """Spectral norm; zero for the empty matrix."""
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


# --------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Eigenvalue:
    re: float
    im: float
    multiplicity: int

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[Eigenvalue, ...]
    residual_bound: float

    @property
    def dim(self) -> int:
        return sum(e.multiplicity for e in self.eigenvalues)

    def values(self) -> np.ndarray:
        """All eigenvalues repeated by multiplicity, in canonical order."""
        out = []
        for e in self.eigenvalues:
            out.extend([e.value] * e.multiplicity)
        return np.array(out, dtype=complex)

    def spectral_radius(self) -> float:
        return max((e.modulus for e in self.eigenvalues), default=0.0)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [
                {"re": e.re, "im": e.im, "multiplicity": e.multiplicity}
                for e in self.eigenvalues
            ],
            "residual_bound": self.residual_bound,
        }


def _order_key(z: complex):
    return (-abs(z), -z.real, -z.imag)


def cluster_values(values, radius: float) -> list[list[complex]]:
    """Single-linkage clusters of complex numbers at the given radius."""
    values = [complex(v) for v in values]
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(values[i])
    return list(groups.values())


def raw_eigenvalues(m: np.ndarray) -> np.ndarray:
    try:
        vals = scipy.linalg.eigvals(m, check_finite=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise non_convergence(f"eigenvalue solver failed: {exc}") from None
    if not np.all(np.isfinite(vals)):
        raise non_convergence("eigenvalue solver returned non-finite values")
    return vals


def eigenvalues(m, tol: Tolerances = DEFAULT) -> Spectrum:
    """Eigenvalues with algebraic multiplicity.

    Numerically coincident eigenvalues (within ``tol.cluster * (1 + |m|)``)
    are merged and reported once with their combined multiplicity.  Order is
    descending modulus, then descending real part, then descending imaginary
    part.
    """
    m = as_real_matrix(m)
    vals = raw_eigenvalues(m)
    norm = opnorm(m)
    radius = tol.cluster * (1.0 + norm)
    entries = []
    for group in cluster_values(vals, radius):
        centre = complex(np.mean(group))
        # real input: a cluster straddling the axis is self-conjugate
        if abs(centre.imag) <= radius:
            centre = complex(centre.real, 0.0)
        entries.append((centre, len(group)))
    entries.sort(key=lambda e: _order_key(e[0]))
    scale = max(norm, 1e-300)
    residual = 0.0
    eye = np.eye(m.shape[0])
    for z, _ in entries:
        smin = np.linalg.svd(m - z * eye, compute_uv=False)[-1]
        residual = max(residual, float(smin) / scale)
    return Spectrum(
        tuple(Eigenvalue(float(z.real), float(z.imag), k) for z, k in entries),
        residual,
    )


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of R^ambient_dim with an orthonormal basis stored as columns."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float).reshape(self.ambient_dim, -1)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, i].copy() for i in range(self.dim)]

    def same_as(self, other: "Subspace", atol: float = 1e-8) -> bool:
        return (
            self.ambient_dim == other.ambient_dim
            and np.allclose(self.projector(), other.projector(), atol=atol, rtol=0)
        )

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [v.tolist() for v in self.vectors()]}

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, np.eye(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, np.zeros((n, 0)))


def null_space(m, tol: float = DEFAULT.rel, floor: float = 0.0) -> Subspace:
    """Right-singular vectors with singular value <= tol * max(sigma_max, floor).

    With the default ``floor`` of zero this is the usual relative rank
    cut-off (reference 1 when ``m`` vanishes).  A positive ``floor`` keeps
    rounding noise in a nearly-zero matrix from being read as full rank.
    """
    if tol <= 0:
        raise InputError("null_space tolerance must be positive")
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise InputError("null_space expects a matrix")
    n = a.shape[1]
    try:
        _, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise non_convergence(f"SVD failed: {exc}") from None
    top = max(s[0] if s.size else 0.0, floor)
    if top <= 0:
        top = 1.0
    sv = np.zeros(n)
    sv[: s.size] = s
    keep = sv <= tol * top
    if keep.all():
        return Subspace.full(n)
    basis = vh[keep].T
    # sign convention: largest-magnitude entry of each vector is positive
    for j in range(basis.shape[1]):
        i = int(np.argmax(np.abs(basis[:, j])))
        if basis[i, j] < 0:
            basis[:, j] = -basis[:, j]
    return Subspace(n, basis)


def intersect(a: Subspace, b: Subspace, tol: float = DEFAULT.rel) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise dimension_mismatch(f"ambient dims {a.ambient_dim} != {b.ambient_dim}")
    n = a.ambient_dim
    eye = np.eye(n)
    stacked = np.vstack([eye - a.projector(), eye - b.projector()])
    # complement projectors have unit scale; rounding noise must not set it
    return null_space(stacked, tol, floor=1.0)


def matrix_power_apply(m, x, n: int) -> np.ndarray:
    """``m`` applied ``n`` times to ``x`` (never forms the matrix power)."""
    m = np.asarray(m, dtype=float)
    y = np.array(x, dtype=float)
    if m.shape[1] != y.shape[0]:
        raise dimension_mismatch(f"matrix {m.shape} cannot act on vector of length {y.shape[0]}")
    if n < 0:
        raise InputError("power must be nonnegative")
    for _ in range(n):
        y = m @ y
    return y


def is_invertible(m: np.ndarray, tol: Tolerances = DEFAULT) -> bool:
    """Numerically invertible: sigma_min > tol.singular * sigma_max."""
    m = np.asarray(m, dtype=float)
    if m.shape[0] == 0:
        return True
    sv = np.linalg.svd(m, compute_uv=False)
    return bool(sv[-1] > tol.singular * sv[0])
