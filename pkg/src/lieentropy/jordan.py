"""Jordan-Chevalley and multiplicative Jordan decompositions.

The semisimple part is built from spectral projectors onto generalized
eigenspaces.  Each projector comes from a reordered complex Schur form,
so defective eigenvalues never need an eigenvector basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import DEFAULT, Tolerances
from .errors import NumericError, non_convergence, singular
from .linalg import (
    Subspace,
    as_real_matrix,
    cluster_values,
    intersect,
    is_invertible,
    null_space,
    opnorm,
    raw_eigenvalues,
)


@dataclass(frozen=True)
class SpectralBlock:
    eigenvalue: complex
    multiplicity: int
    projector: np.ndarray  # complex, idempotent, commutes with the source


def spectral_blocks(m, tol: Tolerances = DEFAULT) -> list[SpectralBlock]:
    """Generalized eigenspace projectors of ``m`` over C.

    Eigenvalues closer than ``tol.cluster * (1 + |m|)`` form one block whose
    eigenvalue is the cluster mean.  The projectors sum to the identity.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    radius = tol.cluster * (1.0 + opnorm(m))
    groups = cluster_values(raw_eigenvalues(m), radius)
    if len(groups) == 1:
        centre = complex(np.mean(groups[0]))
        if abs(centre.imag) <= radius:
            centre = complex(centre.real, 0.0)
        return [SpectralBlock(centre, n, np.eye(n, dtype=complex))]

    mc = m.astype(complex)
    bases, centres = [], []
    for group in groups:
        centre = complex(np.mean(group))
        if abs(centre.imag) <= radius:
            centre = complex(centre.real, 0.0)
        reach = max(abs(z - centre) for z in group) + radius
        try:
            _, q, sdim = scipy.linalg.schur(
                mc, output="complex", sort=lambda z, c=centre, r=reach: abs(z - c) <= r
            )
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError) as exc:
            raise non_convergence(f"Schur reordering failed: {exc}") from None
        if sdim != len(group):
            raise non_convergence(
                f"eigenvalue cluster near {centre:.6g} split during reordering "
                f"({sdim} != {len(group)})"
            )
        bases.append(q[:, :sdim])
        centres.append(centre)

    v = np.hstack(bases)
    try:
        w = np.linalg.inv(v)
    except np.linalg.LinAlgError:
        raise non_convergence("generalized eigenspaces are not independent") from None
    blocks, start = [], 0
    for centre, basis in zip(centres, bases):
        k = basis.shape[1]
        blocks.append(SpectralBlock(centre, k, basis @ w[start : start + k]))
        start += k
    return blocks


def _realify(a: np.ndarray, what: str, scale: float) -> np.ndarray:
    if np.max(np.abs(a.imag), initial=0.0) > 1e-6 * max(scale, 1.0):
        raise NumericError(f"{what} has a large imaginary part", code="NON_CONVERGENCE")
    return np.ascontiguousarray(a.real)


def chevalley(m, tol: Tolerances = DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """Additive decomposition ``m = S + N``: S semisimple, N nilpotent, commuting."""
    m = as_real_matrix(m)
    s = sum(b.eigenvalue * b.projector for b in spectral_blocks(m, tol))
    s = _realify(s, "semisimple part", opnorm(m))
    return s, m - s


@dataclass(frozen=True, eq=False)
class MultiplicativeJordan:
    elliptic: np.ndarray
    hyperbolic: np.ndarray
    unipotent: np.ndarray
    source: np.ndarray

    def factors(self):
        return self.elliptic, self.hyperbolic, self.unipotent

    def to_dict(self) -> dict:
        return {
            "source": self.source.tolist(),
            "elliptic": self.elliptic.tolist(),
            "hyperbolic": self.hyperbolic.tolist(),
            "unipotent": self.unipotent.tolist(),
        }


def multiplicative_jordan(m, tol: Tolerances = DEFAULT) -> MultiplicativeJordan:
    """Split an invertible ``m`` as ``E @ H @ U``.

    E is semisimple with unit-modulus spectrum, H semisimple with positive
    spectrum, U unipotent; all three are polynomials in ``m`` and commute.
    On each generalized eigenspace with eigenvalue ``lam`` the elliptic and
    hyperbolic parts act as ``lam / |lam|`` and ``|lam|``; moduli inside the
    unit band are snapped to one.
    """
    m = as_real_matrix(m)
    if not is_invertible(m, tol):
        raise singular("multiplicative Jordan decomposition needs an invertible matrix")
    n = m.shape[0]
    e = np.zeros((n, n), dtype=complex)
    h = np.zeros((n, n), dtype=complex)
    s_inv = np.zeros((n, n), dtype=complex)
    for block in spectral_blocks(m, tol):
        lam = block.eigenvalue
        mod = abs(lam)
        phase = lam / mod
        if abs(mod - 1.0) <= tol.modulus_band:
            mod = 1.0
        e += phase * block.projector
        h += mod * block.projector
        s_inv += block.projector / lam
    scale = opnorm(m)
    e = _realify(e, "elliptic part", 1.0)
    h = _realify(h, "hyperbolic part", scale)
    u = _realify(s_inv, "inverse semisimple part", 1.0 / max(scale, 1e-300)) @ m
    for a in (e, h, u):
        a.setflags(write=False)
    return MultiplicativeJordan(e, h, u, m)


def semisimplicity_residual(a, tol: Tolerances = DEFAULT) -> float:
    """Relative size of prod_j (a - mu_j) over the distinct eigenvalues mu_j.

    Vanishes exactly when the minimal polynomial has simple roots, so it is
    an eigenvector-free test of diagonalizability.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    norm = opnorm(a)
    radius = tol.cluster * (1.0 + norm)
    prod = np.eye(n, dtype=complex)
    scale = 1.0
    for group in cluster_values(raw_eigenvalues(a), radius):
        mu = complex(np.mean(group))
        prod = prod @ (a - mu * np.eye(n))
        scale *= norm + abs(mu)
    return float(opnorm(prod) / scale) if scale > 0 else 0.0


def invariant_residuals(mj: MultiplicativeJordan, tol: Tolerances = DEFAULT) -> dict[str, float]:
    """Residuals of every structural invariant of a decomposition, each scaled.

    Keys: reconstruction, commute_eh, commute_eu, commute_hu,
    elliptic_modulus, elliptic_semisimple, hyperbolic_min_eig,
    hyperbolic_imag, hyperbolic_semisimple, unipotent_nilpotency.
    """
    e, h, u = mj.factors()
    src = mj.source
    n = src.shape[0]
    ne, nh, nu = opnorm(e), opnorm(h), opnorm(u)

    def comm(a, b, na, nb):
        return opnorm(a @ b - b @ a) / max(na * nb, 1e-300)

    e_eigs = raw_eigenvalues(e)
    h_eigs = raw_eigenvalues(h)
    nil = np.linalg.matrix_power(u - np.eye(n), n)
    return {
        "reconstruction": opnorm(e @ h @ u - src) / max(opnorm(src), 1e-300),
        "commute_eh": comm(e, h, ne, nh),
        "commute_eu": comm(e, u, ne, nu),
        "commute_hu": comm(h, u, nh, nu),
        "elliptic_modulus": float(np.max(np.abs(np.abs(e_eigs) - 1.0))),
        "elliptic_semisimple": semisimplicity_residual(e, tol),
        "hyperbolic_min_eig": float(np.min(h_eigs.real)),
        "hyperbolic_imag": float(np.max(np.abs(h_eigs.imag))),
        "hyperbolic_semisimple": semisimplicity_residual(h, tol),
        "unipotent_nilpotency": opnorm(nil),
    }


def check_invariants(mj: MultiplicativeJordan, tol: Tolerances = DEFAULT) -> dict[str, bool]:
    r = invariant_residuals(mj, tol)
    return {
        "reconstruction": r["reconstruction"] <= tol.invariant,
        "commute": max(r["commute_eh"], r["commute_eu"], r["commute_hu"]) <= tol.invariant,
        "elliptic": r["elliptic_modulus"] <= 1e-7 and r["elliptic_semisimple"] <= 1e-7,
        "hyperbolic": r["hyperbolic_min_eig"] >= 1e-12
        and r["hyperbolic_imag"] <= 1e-7
        and r["hyperbolic_semisimple"] <= 1e-7,
        "unipotent": r["unipotent_nilpotency"] <= 1e-7,
    }


def fixed_space_of_hyperbolic(m, tol: Tolerances = DEFAULT) -> Subspace:
    """Fix(H) for the hyperbolic part of ``m``.

    Computed as the kernel of the projector onto the off-circle generalized
    eigenspaces, which has the same kernel as ``H - I`` but singular values
    bounded away from zero, so the rank decision does not depend on how
    close an eigenvalue modulus sits to the band edge.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    off = np.zeros((n, n), dtype=complex)
    for block in spectral_blocks(m, tol):
        if abs(abs(block.eigenvalue) - 1.0) > tol.modulus_band:
            off += block.projector
    off = _realify(off, "off-circle projector", 1.0)
    if not np.any(off):
        return Subspace.full(n)
    return null_space(off, tol.cluster, floor=1.0)


def recurrent_subspace(m, tol: Tolerances = DEFAULT) -> Subspace:
    """The recurrent set of the linear map ``m``: Fix(H) intersected with Fix(U)."""
    mj = multiplicative_jordan(m, tol)
    n = mj.source.shape[0]
    fix_h = fixed_space_of_hyperbolic(mj.source, tol)
    fix_u = null_space(mj.unipotent - np.eye(n), tol.cluster, floor=max(opnorm(mj.unipotent), 1.0))
    return intersect(fix_h, fix_u, tol.cluster)


def elliptic_invariant_gram(e, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Symmetric positive definite P with ``e.T @ P @ e == P``.

    Sums ``Q^H Q`` over the eigenprojectors Q of ``e``; each term is
    preserved because ``Q e = lam Q`` with ``|lam| = 1``.
    """
    e = as_real_matrix(e)
    eigs = raw_eigenvalues(e)
    if np.max(np.abs(np.abs(eigs) - 1.0)) > 1e-7:
        raise NumericError("matrix has eigenvalues off the unit circle", code="NOT_ELLIPTIC")
    if semisimplicity_residual(e, tol) > 1e-7:
        raise NumericError("matrix is not semisimple", code="NOT_ELLIPTIC")
    gram = sum(b.projector.conj().T @ b.projector for b in spectral_blocks(e, tol))
    gram = _realify(gram, "Gram matrix", 1.0)
    gram = 0.5 * (gram + gram.T)
    gram.setflags(write=False)
    return gram
