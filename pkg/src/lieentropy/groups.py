"""Structural descriptions of connected Lie groups and their endomorphisms.

A group is described only by the data the entropy theorems consume: the
dimension of its toral component, the lattice map induced there, and for
semi-simple pieces the conjugating element.  :func:`validate` checks the
hypotheses each theorem needs and never raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import references as ref
from .config import DEFAULT, Tolerances
from .errors import InputError
from .linalg import as_integer_matrix, as_real_matrix, is_invertible

TORUS = "TORUS"
VECTOR = "VECTOR"
ABELIAN = "ABELIAN"
NILPOTENT = "NILPOTENT"
SEMISIMPLE_LINEAR = "SEMISIMPLE_LINEAR"
REDUCTIVE = "REDUCTIVE"
COMPACT = "COMPACT"
GENERAL = "GENERAL"

GROUP_KINDS = (TORUS, VECTOR, ABELIAN, NILPOTENT, SEMISIMPLE_LINEAR, REDUCTIVE, COMPACT, GENERAL)
ABELIAN_KINDS = (TORUS, VECTOR, ABELIAN)


@dataclass(frozen=True)
class GroupDescriptor:
    """Connected Lie group, by class and dimensions.

    ``p`` is the toral dimension, ``q`` the vector dimension of an abelian
    group, ``n`` the nilpotent algebra dimension or the matrix size of a
    linear semi-simple group.  For GENERAL, ``p`` and ``p_quotient`` are the
    toral dimensions of the derived radical and of the abelianised radical.
    """

    kind: str
    p: int = 0
    q: int = 0
    n: int = 0
    p_quotient: int = 0
    center: Optional["GroupDescriptor"] = None
    derived: Optional["GroupDescriptor"] = None
    pi_proper: bool = True

    @property
    def is_abelian(self) -> bool:
        return self.kind in ABELIAN_KINDS

    def to_dict(self) -> dict:
        if self.kind == TORUS:
            return {"type": TORUS, "p": self.p}
        if self.kind == VECTOR:
            return {"type": VECTOR, "q": self.q}
        if self.kind == ABELIAN:
            return {"type": ABELIAN, "p": self.p, "q": self.q}
        if self.kind == NILPOTENT:
            return {"type": NILPOTENT, "p": self.p, "n": self.n}
        if self.kind == SEMISIMPLE_LINEAR:
            return {"type": SEMISIMPLE_LINEAR, "n": self.n}
        if self.kind == REDUCTIVE:
            return {
                "type": REDUCTIVE,
                "center": self.center.to_dict(),
                "derived": self.derived.to_dict(),
                "pi_proper": self.pi_proper,
            }
        if self.kind == COMPACT:
            return {"type": COMPACT, "p": self.p}
        return {"type": GENERAL, "p": self.p, "p_quotient": self.p_quotient}


def torus(p: int) -> GroupDescriptor:
    return GroupDescriptor(TORUS, p=p)


def vector(q: int) -> GroupDescriptor:
    return GroupDescriptor(VECTOR, q=q)


def abelian(p: int, q: int) -> GroupDescriptor:
    return GroupDescriptor(ABELIAN, p=p, q=q)


def nilpotent(p: int, n: int) -> GroupDescriptor:
    return GroupDescriptor(NILPOTENT, p=p, n=n)


def semisimple_linear(n: int) -> GroupDescriptor:
    return GroupDescriptor(SEMISIMPLE_LINEAR, n=n)


def reductive(center: GroupDescriptor, derived: GroupDescriptor, pi_proper: bool) -> GroupDescriptor:
    return GroupDescriptor(REDUCTIVE, center=center, derived=derived, pi_proper=pi_proper)


def compact(p: int) -> GroupDescriptor:
    return GroupDescriptor(COMPACT, p=p)


def general(p: int, p_quotient: int) -> GroupDescriptor:
    return GroupDescriptor(GENERAL, p=p, p_quotient=p_quotient)


# --------------------------------------------------------------------------
# endomorphism payloads


def _real_block(b, rows: int, cols: int) -> np.ndarray:
    if b is None:
        out = np.zeros((rows, cols))
    else:
        out = np.array(b, dtype=float)
        if out.size == 0:
            out = np.zeros((rows, cols))
    out.setflags(write=False)
    return out


def _real_square(m, allow_empty: bool = True) -> np.ndarray:
    if m is None or np.size(m) == 0:
        if not allow_empty:
            raise InputError("matrix must be non-empty")
        out = np.zeros((0, 0))
        out.setflags(write=False)
        return out
    return as_real_matrix(m)


@dataclass(frozen=True, eq=False)
class AbelianEndo:
    """phi = [[T, B], [0, S]] on T^p x R^q."""

    kind = ABELIAN
    T: np.ndarray = field(default_factory=lambda: as_integer_matrix([]))
    B: Optional[np.ndarray] = None
    S: np.ndarray = field(default_factory=lambda: _real_square(None))

    def __post_init__(self):
        t = as_integer_matrix([] if self.T is None else self.T, "lattice map T")
        s = _real_square(self.S)
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "B", _real_block(self.B, t.shape[0], s.shape[0]))

    def to_dict(self) -> dict:
        return {"type": ABELIAN, "T": self.T.tolist(), "B": self.B.tolist(), "S": self.S.tolist()}


@dataclass(frozen=True, eq=False)
class NilpotentEndo:
    kind = NILPOTENT
    toral_map: np.ndarray
    differential: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "toral_map", as_integer_matrix(self.toral_map, "toral_map"))
        if self.differential is not None:
            object.__setattr__(self, "differential", _real_square(self.differential))

    def to_dict(self) -> dict:
        out = {"type": NILPOTENT, "toral_map": self.toral_map.tolist()}
        if self.differential is not None:
            out["differential"] = self.differential.tolist()
        return out


@dataclass(frozen=True, eq=False)
class SemisimpleEndo:
    """phi^k = conjugation by g; ``k == 1`` is a plain conjugation."""

    kind = SEMISIMPLE_LINEAR
    g: np.ndarray
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "g", as_real_matrix(self.g, "conjugating element g"))

    @property
    def is_power(self) -> bool:
        return self.k != 1

    def to_dict(self) -> dict:
        if self.k == 1:
            return {"type": SEMISIMPLE_LINEAR, "form": "CONJUGATION", "g": self.g.tolist()}
        return {
            "type": SEMISIMPLE_LINEAR,
            "form": "POWER_OF_CONJUGATION",
            "k": self.k,
            "g": self.g.tolist(),
        }


@dataclass(frozen=True, eq=False)
class ReductiveEndo:
    kind = REDUCTIVE
    center: AbelianEndo
    derived: SemisimpleEndo

    def to_dict(self) -> dict:
        return {"type": REDUCTIVE, "center": self.center.to_dict(), "derived": self.derived.to_dict()}


@dataclass(frozen=True, eq=False)
class CompactEndo:
    kind = COMPACT
    toral_map: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "toral_map", as_integer_matrix(self.toral_map, "toral_map"))

    def to_dict(self) -> dict:
        return {"type": COMPACT, "toral_map": self.toral_map.tolist()}


@dataclass(frozen=True, eq=False)
class GeneralEndo:
    """Lattice maps on T(R') and on T(R/R') for the radical R."""

    kind = "GENERAL_CONJECTURE"
    toral_R_prime: np.ndarray
    toral_R_mod_R_prime: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "toral_R_prime", as_integer_matrix(self.toral_R_prime, "toral_R_prime"))
        object.__setattr__(
            self, "toral_R_mod_R_prime", as_integer_matrix(self.toral_R_mod_R_prime, "toral_R_mod_R_prime")
        )

    def to_dict(self) -> dict:
        return {
            "type": "GENERAL_CONJECTURE",
            "toral_R_prime": self.toral_R_prime.tolist(),
            "toral_R_mod_R_prime": self.toral_R_mod_R_prime.tolist(),
        }


EndoDescriptor = Union[AbelianEndo, NilpotentEndo, SemisimpleEndo, ReductiveEndo, CompactEndo, GeneralEndo]

_ENDO_FOR_GROUP = {
    TORUS: AbelianEndo,
    VECTOR: AbelianEndo,
    ABELIAN: AbelianEndo,
    NILPOTENT: NilpotentEndo,
    SEMISIMPLE_LINEAR: SemisimpleEndo,
    REDUCTIVE: ReductiveEndo,
    COMPACT: CompactEndo,
    GENERAL: GeneralEndo,
}


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Finding:
    severity: str  # ERROR | WARNING | INFO
    code: str
    message: str
    paper_ref: str

    def to_dict(self) -> dict:
        return {"severity": self.severity, "code": self.code, "message": self.message, "paper_ref": self.paper_ref}


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(f.severity == "ERROR" for f in self.findings)

    def codes(self, severity: str | None = None) -> list[str]:
        return [f.code for f in self.findings if severity is None or f.severity == severity]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "findings": [f.to_dict() for f in self.findings]}


class _Checker:
    def __init__(self, tol: Tolerances):
        self.tol = tol
        self.findings: list[Finding] = []

    def add(self, severity, code, message, paper_ref=ref.ARTIFACT):
        self.findings.append(Finding(severity, code, message, paper_ref))

    def dims(self, g: GroupDescriptor, where: str = ""):
        for name in ("p", "q", "n", "p_quotient"):
            v = getattr(g, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
                self.add("ERROR", "BAD_DIMENSION", f"{where}{name}={v!r} must be a nonnegative integer")

    def shape(self, m, size: int, label: str) -> bool:
        if m.shape != (size, size):
            self.add("ERROR", "DIMENSION_MISMATCH", f"{label} has shape {m.shape}, expected ({size}, {size})")
            return False
        return True

    def lattice(self, t: np.ndarray, label: str):
        if t.shape[0] == 0:
            return
        det = round(np.linalg.det(t.astype(float))) if t.shape[0] > 12 else _int_det(t)
        if det == 0:
            self.add("ERROR", "SINGULAR_LATTICE_MAP", f"{label} has determinant 0; torus map not surjective", ref.ABELIAN)
        elif abs(det) > 1:
            self.add(
                "WARNING",
                "FINITE_COVERING",
                f"{label}: {abs(det)}-fold covering; kernel finite, map proper",
                ref.PROPERNESS,
            )

    def abelian(self, g: GroupDescriptor, e: AbelianEndo, where: str = ""):
        p, q = g.p, g.q
        if g.kind == TORUS:
            q = 0
        elif g.kind == VECTOR:
            p = 0
        ok_t = self.shape(e.T, p, f"{where}T")
        ok_s = self.shape(e.S, q, f"{where}S")
        if e.B.shape != (p, q):
            self.add("ERROR", "DIMENSION_MISMATCH", f"{where}B has shape {e.B.shape}, expected ({p}, {q})")
        elif not np.all(np.isfinite(e.B)):
            self.add("ERROR", "NON_FINITE", f"{where}B has non-finite entries")
        elif np.any(e.B):
            self.add("INFO", "COUPLING_IGNORED", f"{where}coupling block B does not affect entropy", ref.ABELIAN)
        if ok_t:
            self.lattice(e.T, f"{where}T")
        if ok_s and q and not is_invertible(e.S, self.tol):
            self.add(
                "ERROR",
                "NOT_SURJECTIVE",
                f"{where}S is singular; the vector part must be a linear isomorphism",
                ref.ABELIAN,
            )

    def semisimple(self, g: GroupDescriptor, e: SemisimpleEndo, where: str = ""):
        if g.n < 1:
            self.add("ERROR", "BAD_DIMENSION", f"{where}semi-simple matrix size must be >= 1")
        if not self.shape(e.g, g.n, f"{where}g"):
            return
        if not isinstance(e.k, (int, np.integer)) or isinstance(e.k, bool) or e.k < 1:
            self.add("ERROR", "BAD_POWER", f"{where}k={e.k!r} must be a positive integer", ref.SEMISIMPLE_POWER)
        if not is_invertible(e.g, self.tol):
            self.add("ERROR", "SINGULAR_MATRIX", f"{where}conjugating element is singular", ref.SEMISIMPLE_CONJ)
            return
        det = float(np.linalg.det(e.g))
        if abs(abs(det) - 1.0) > self.tol.rel:
            self.add(
                "ERROR",
                "NOT_IN_GROUP",
                f"{where}|det g| = {abs(det):.12g}; elements of a connected semi-simple linear group have |det| = 1",
                ref.SEMISIMPLE_CONJ,
            )


def _int_det(t: np.ndarray) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in t.tolist()]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_det(t) -> int:
    t = as_integer_matrix(t)
    return 1 if t.shape[0] == 0 else _int_det(t)


def validate(g: GroupDescriptor, e, tol: Tolerances = DEFAULT) -> ValidationReport:
    """Check the hypotheses of the entropy theorems; total (never raises)."""
    c = _Checker(tol)
    try:
        _validate(c, g, e)
    except Exception as exc:  # noqa: BLE001 - validation must be total
        c.add("ERROR", "MALFORMED", f"descriptor could not be checked: {exc}")
    return ValidationReport(tuple(c.findings))


def _validate(c: _Checker, g, e):
    if not isinstance(g, GroupDescriptor) or g.kind not in GROUP_KINDS:
        c.add("ERROR", "UNKNOWN_VARIANT", f"unknown group descriptor {g!r}")
        return
    expected = _ENDO_FOR_GROUP[g.kind]
    if not isinstance(e, expected):
        c.add(
            "ERROR",
            "VARIANT_MISMATCH",
            f"group {g.kind} needs a {expected.kind} endomorphism, got {getattr(e, 'kind', type(e).__name__)}",
        )
        return
    c.dims(g)
    if any(f.severity == "ERROR" for f in c.findings):
        return
    if g.kind in ABELIAN_KINDS:
        c.abelian(g, e)
    elif g.kind == NILPOTENT:
        if g.p > g.n:
            c.add("ERROR", "BAD_DIMENSION", f"toral dimension {g.p} exceeds algebra dimension {g.n}")
        if c.shape(e.toral_map, g.p, "toral_map"):
            c.lattice(e.toral_map, "toral_map")
        if e.differential is not None and c.shape(e.differential, g.n, "differential"):
            if g.n and not is_invertible(e.differential, c.tol):
                c.add("ERROR", "NOT_SURJECTIVE", "differential is singular", ref.NILPOTENT)
            else:
                c.add("INFO", "DIFFERENTIAL_UNUSED", "differential is recorded but does not affect entropy", ref.NILPOTENT)
    elif g.kind == SEMISIMPLE_LINEAR:
        c.semisimple(g, e)
    elif g.kind == REDUCTIVE:
        if g.center is None or not g.center.is_abelian:
            c.add("ERROR", "BAD_VARIANT", "reductive center must be an abelian descriptor")
            return
        if g.derived is None or g.derived.kind != SEMISIMPLE_LINEAR:
            c.add("ERROR", "BAD_VARIANT", "reductive derived group must be SEMISIMPLE_LINEAR")
            return
        if not isinstance(e.center, AbelianEndo) or not isinstance(e.derived, SemisimpleEndo):
            c.add("ERROR", "VARIANT_MISMATCH", "reductive payload needs abelian center and semi-simple derived parts")
            return
        c.dims(g.center, "center.")
        c.dims(g.derived, "derived.")
        c.abelian(g.center, e.center, "center.")
        c.semisimple(g.derived, e.derived, "derived.")
        if not g.pi_proper:
            c.add(
                "WARNING",
                "PI_NOT_PROPER",
                "projection Z(G)_0 x G' -> G not known to be proper; the reduction is only proven "
                "when it is, so the result is marked conjectural",
                ref.REDUCTIVE,
            )
    elif g.kind == COMPACT:
        if c.shape(e.toral_map, g.p, "toral_map"):
            c.lattice(e.toral_map, "toral_map")
    else:
        if c.shape(e.toral_R_prime, g.p, "toral_R_prime"):
            c.lattice(e.toral_R_prime, "toral_R_prime")
        if c.shape(e.toral_R_mod_R_prime, g.p_quotient, "toral_R_mod_R_prime"):
            c.lattice(e.toral_R_mod_R_prime, "toral_R_mod_R_prime")
        c.add("WARNING", "CONJECTURAL", "general connected groups are handled by an unproven formula", ref.GENERAL)


def toral_component(g: GroupDescriptor, e) -> np.ndarray:
    """Lattice matrix of the endomorphism restricted to the toral component T(G)."""
    if g.kind == GENERAL:
        raise InputError("toral component is not defined for the general conjectural class", code="UNSUPPORTED_VARIANT")
    if g.kind in ABELIAN_KINDS:
        return e.T
    if g.kind in (NILPOTENT, COMPACT):
        return e.toral_map
    if g.kind == SEMISIMPLE_LINEAR:
        return as_integer_matrix([])
    if g.kind == REDUCTIVE:
        return e.center.T
    raise InputError(f"unknown variant {g.kind}", code="UNSUPPORTED_VARIANT")
