"""Entropy of surjective Lie group endomorphisms by reduction to the torus.

Every public function returns an :class:`EntropyCertificate`: the value,
the eigenvalues that produced it, and an ordered trace naming each
theorem that was applied.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from . import references as ref
from .config import DEFAULT, Tolerances
from .errors import InputError, ValidationFailed, singular
from .groups import (
    ABELIAN_KINDS,
    COMPACT,
    GENERAL,
    NILPOTENT,
    REDUCTIVE,
    SEMISIMPLE_LINEAR,
    AbelianEndo,
    GroupDescriptor,
    SemisimpleEndo,
    integer_det,
    validate,
)
from .linalg import as_integer_matrix, as_real_matrix, eigenvalues, is_invertible

LOG_BASES = {"e": 1.0, "2": math.log(2.0)}
EXACT_CYCLOTOMIC_MAX_DIM = 6


@dataclass(frozen=True)
class Contribution:
    eigenvalue: complex
    modulus: float
    log_modulus: float

    def to_dict(self) -> dict:
        z = self.eigenvalue
        return {"re": z.real + 0.0, "im": z.imag + 0.0, "modulus": self.modulus, "log_modulus": self.log_modulus}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    paper_ref: str
    detail: str

    def to_dict(self) -> dict:
        return {"rule": self.rule, "paper_ref": self.paper_ref, "detail": self.detail}


@dataclass(frozen=True)
class EntropyCertificate:
    value: float
    contributions: tuple[Contribution, ...] = ()
    trace: tuple[TraceStep, ...] = ()
    conjectural: bool = False
    log_base: str = "e"

    @classmethod
    def build(cls, contributions, trace, conjectural=False, log_base="e") -> "EntropyCertificate":
        contributions = tuple(contributions)
        value = math.fsum(c.log_modulus for c in contributions)
        return cls(value + 0.0, contributions, tuple(trace), conjectural, log_base)

    def with_steps(self, *steps: TraceStep, conjectural: bool | None = None) -> "EntropyCertificate":
        return replace(
            self,
            trace=self.trace + steps,
            conjectural=self.conjectural if conjectural is None else conjectural,
        )

    def in_base(self, base: str) -> "EntropyCertificate":
        """Re-express every logarithm in base ``e`` or ``2``."""
        if base not in LOG_BASES:
            raise InputError(f"log base must be one of {sorted(LOG_BASES)}, got {base!r}")
        if base == self.log_base:
            return self
        factor = LOG_BASES[self.log_base] / LOG_BASES[base]
        contribs = [replace(c, log_modulus=c.log_modulus * factor) for c in self.contributions]
        return EntropyCertificate.build(contribs, self.trace, self.conjectural, base)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "log_base": self.log_base,
            "conjectural": self.conjectural,
            "contributions": [c.to_dict() for c in self.contributions],
            "trace": [s.to_dict() for s in self.trace],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def rules(self) -> list[str]:
        return [s.rule for s in self.trace]


def _contributions(values, tol: Tolerances) -> list[Contribution]:
    out = []
    for z in values:
        z = complex(z)
        mod = abs(z)
        if mod > 1.0 + tol.modulus_band:
            out.append(Contribution(z, mod, math.log(mod)))
    return out


def bowen_formula(m, tol: Tolerances = DEFAULT) -> EntropyCertificate:
    """Sum of log|lambda| over eigenvalues outside the closed unit band, with multiplicity."""
    m = as_real_matrix(m)
    if not is_invertible(m, tol):
        raise singular("Bowen's formula is applied to invertible differentials only")
    spec = eigenvalues(m, tol)
    contribs = _contributions(spec.values(), tol)
    step = TraceStep(
        "BOWEN",
        ref.BOWEN,
        f"{len(contribs)} of {m.shape[0]} eigenvalues lie outside the unit circle "
        f"(band {tol.modulus_band:g}); residual bound {spec.residual_bound:.3g}",
    )
    return EntropyCertificate.build(contribs, [step])


# --------------------------------------------------------------------------
# tori


def _charpoly_factors(t: np.ndarray):
    """Irreducible factors of the characteristic polynomial over Z: [(Poly, multiplicity)]."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Matrix(t.tolist()).charpoly(x)
    _, factors = sympy.factor_list(poly.as_expr(), x)
    return [(sympy.Poly(f, x), k) for f, k in factors]


def _torus_exact(t: np.ndarray, tol: Tolerances) -> EntropyCertificate:
    cyclo, rest = [], []
    for f, k in _charpoly_factors(t):
        (cyclo if f.is_cyclotomic else rest).append((f, k))
    values = []
    for f, k in rest:
        coeffs = [float(c) for c in f.all_coeffs()]
        roots = np.roots(coeffs) if len(coeffs) > 1 else []
        for z in roots:
            values.extend([z] * k)
    values.sort(key=lambda z: (-abs(z), -z.real, -z.imag))
    contribs = _contributions(values, tol)
    cyclo_deg = sum(f.degree() * k for f, k in cyclo)
    detail = (
        f"characteristic polynomial: cyclotomic part of degree {cyclo_deg} contributes exactly 0; "
        f"{len(contribs)} roots of the remaining factors lie outside the unit circle"
    )
    return EntropyCertificate.build(contribs, [TraceStep("CYCLOTOMIC_EXACT", ref.TORUS, detail)])


def torus_entropy(t, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False) -> EntropyCertificate:
    """Entropy of the torus endomorphism induced by an integer matrix."""
    t = as_integer_matrix(t)
    p = t.shape[0]
    if p == 0:
        return EntropyCertificate.build([], [TraceStep("TORUS", ref.TORUS, "trivial torus (dimension 0): entropy 0")])
    det = integer_det(t)
    if det == 0:
        raise InputError("lattice map has determinant 0", code="SINGULAR_LATTICE_MAP")
    if exact_cyclotomic and p <= EXACT_CYCLOTOMIC_MAX_DIM:
        cert = _torus_exact(t, tol)
    else:
        cert = bowen_formula(t.astype(float), tol)
        if exact_cyclotomic:
            cert = cert.with_steps(
                TraceStep("CYCLOTOMIC_SKIPPED", ref.TORUS, f"exact check limited to dimension <= {EXACT_CYCLOTOMIC_MAX_DIM}")
            )
    step = TraceStep("TORUS", ref.TORUS, f"T^{p} endomorphism with det {det}: entropy is Bowen's sum on the lift to R^{p}")
    return replace(cert, trace=(step,) + cert.trace)


# --------------------------------------------------------------------------
# group classes


def abelian_entropy(t, b, s, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False) -> EntropyCertificate:
    """T(G) x R^q with phi = [[T, B], [0, S]]: only T contributes."""
    endo = AbelianEndo(t, b, s)
    q = endo.S.shape[0]
    if q and not is_invertible(endo.S, tol):
        raise InputError("vector part S is singular", code="NOT_SURJECTIVE")
    p = endo.T.shape[0]
    head = TraceStep(
        "ABELIAN_REDUCTION",
        ref.ABELIAN,
        f"G = T^{p} x R^{q}; entropy equals the entropy on the toral component T^{p}",
    )
    cert = torus_entropy(endo.T, tol, exact_cyclotomic)
    tail = [
        TraceStep(
            "VECTOR_PART_ZERO",
            ref.LINEAR_ZERO,
            f"S on R^{q} is a linear isomorphism: contributes 0.0",
        )
    ]
    if np.any(endo.B):
        tail.append(TraceStep("COUPLING_IGNORED", ref.ABELIAN, "off-diagonal block B: contributes 0.0"))
    return replace(cert, trace=(head,) + cert.trace + tuple(tail))


def nilpotent_entropy(toral_map, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False) -> EntropyCertificate:
    t = as_integer_matrix(toral_map)
    head = (
        TraceStep("NILPOTENT_QUOTIENT", ref.NILPOTENT_QUOTIENT, "G/T(G) is simply connected"),
        TraceStep("NILPOTENT_REDUCTION", ref.NILPOTENT, f"entropy equals the entropy on T(G) = T^{t.shape[0]}"),
    )
    cert = torus_entropy(t, tol, exact_cyclotomic)
    return replace(cert, trace=head + cert.trace)


def semisimple_entropy(payload: SemisimpleEndo, tol: Tolerances = DEFAULT) -> EntropyCertificate:
    """Always zero.  Bowen's sum on Ad(g) is only recorded as an upper bound."""
    from .oracle.adjoint import adjoint_matrix

    g = payload.g
    if not is_invertible(g, tol):
        raise singular("conjugating element is singular")
    steps = []
    if payload.k != 1:
        steps.append(
            TraceStep(
                "SEMISIMPLE_POWER",
                ref.SEMISIMPLE_POWER,
                f"phi^{payload.k} = C_g, and h(phi) = h(phi^{payload.k}) / {payload.k}",
            )
        )
    else:
        steps.append(TraceStep("SEMISIMPLE_POWER", ref.SEMISIMPLE_POWER, "phi = C_g (k = 1)"))
    steps.append(
        TraceStep(
            "CONJUGATION_RECURRENCE",
            ref.SEMISIMPLE_CONJ,
            "R(C_g) = G_h ∩ G_u for g = e h u; C_g is an isometry on its recurrent set",
        )
    )
    steps.append(
        TraceStep(
            "NO_LI_YORKE_PAIR",
            ref.LI_YORKE,
            "positive entropy would force a Li-Yorke pair, which cannot exist for C_g",
        )
    )
    bound = bowen_formula(adjoint_matrix(g), tol)
    steps.append(
        TraceStep(
            "BOWEN_UPPER_BOUND_ONLY",
            ref.BOWEN_UPPER,
            f"Bowen's sum on Ad(g) is {bound.value:.10g}; it is an upper bound and is not used",
        )
    )
    steps.append(TraceStep("SEMISIMPLE_ZERO", ref.SEMISIMPLE, "h(phi) = h(phi|T(G)) = 0; T(G) is trivial"))
    return EntropyCertificate.build([], steps)


def product_entropy(a: EntropyCertificate, b: EntropyCertificate) -> EntropyCertificate:
    if a.log_base != b.log_base:
        b = b.in_base(a.log_base)
    step = TraceStep("PRODUCT", ref.PRODUCT, f"h(phi x psi) = {a.value:.10g} + {b.value:.10g}")
    return EntropyCertificate.build(
        a.contributions + b.contributions,
        a.trace + b.trace + (step,),
        a.conjectural or b.conjectural,
        a.log_base,
    )


def power_entropy(c: EntropyCertificate, k: int) -> EntropyCertificate:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError(f"power must be a positive integer, got {k!r}")
    contribs = [Contribution(z.eigenvalue**k, z.modulus**k, k * z.log_modulus) for z in c.contributions]
    step = TraceStep("POWER", ref.SEMISIMPLE, f"h(phi^{k}) = {k} h(phi)")
    return EntropyCertificate.build(contribs, c.trace + (step,), c.conjectural, c.log_base)


def reductive_entropy(
    center: AbelianEndo,
    derived: SemisimpleEndo | None,
    pi_proper: bool,
    tol: Tolerances = DEFAULT,
    exact_cyclotomic: bool = False,
    compact: bool = False,
) -> EntropyCertificate:
    head = [
        TraceStep(
            "REDUCTIVE_SPLIT",
            ref.REDUCTIVE_SPLIT,
            "phi lifts to phi|Z(G)_0 x phi|G' on Z(G)_0 x G'",
        )
    ]
    if compact:
        head.insert(0, TraceStep("COMPACT_IS_REDUCTIVE", ref.COMPACT, "compact connected groups are reductive; pi is proper"))
    center_cert = abelian_entropy(center.T, center.B, center.S, tol, exact_cyclotomic)
    if derived is None:
        derived_cert = EntropyCertificate.build(
            [], [TraceStep("SEMISIMPLE_ZERO", ref.SEMISIMPLE, "derived group G' is semi-simple: h(phi|G') = 0")]
        )
    else:
        derived_cert = semisimple_entropy(derived, tol)
    cert = product_entropy(center_cert, derived_cert)
    steps = [
        TraceStep("REDUCTIVE_ASSOCIATED", ref.REDUCTIVE_ASSOC, "h(phi~) = h(phi|Z(G)_0) + h(phi|G') = h(phi|T(G)) + 0"),
    ]
    if pi_proper:
        steps.append(TraceStep("REDUCTIVE_REDUCTION", ref.REDUCTIVE, "pi proper, so h(phi) = h(phi~) = h(phi|T(G))"))
    else:
        steps.append(
            TraceStep(
                "WARNING_PI_NOT_PROPER",
                ref.REDUCTIVE,
                "WARNING: properness of pi was not asserted; h(phi) = h(phi|T(G)) is unproven here",
            )
        )
    cert = EntropyCertificate.build(cert.contributions, tuple(head) + cert.trace + tuple(steps), cert.conjectural)
    return cert if pi_proper else replace(cert, conjectural=True)


def compact_entropy(toral_map, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False) -> EntropyCertificate:
    """Compact connected group: reductive with a proper projection; only T(G) matters."""
    t = as_integer_matrix(toral_map)
    return reductive_entropy(AbelianEndo(t), None, True, tol, exact_cyclotomic, compact=True)


def conjectural_general_entropy(
    t_r_prime, t_r_quotient, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False
) -> EntropyCertificate:
    a = torus_entropy(t_r_prime, tol, exact_cyclotomic)
    b = torus_entropy(t_r_quotient, tol, exact_cyclotomic)
    cert = product_entropy(a, b)
    step = TraceStep(
        "GENERAL_CONJECTURE",
        ref.GENERAL,
        "CONJECTURAL: h(phi) = h(phi|T(R')) + h(phi~|T(R/R')) for the solvable radical R; "
        f"this needs the principal-bundle entropy sum ({ref.PRINCIPAL_BUNDLE}) extended to "
        "locally compact bundles, which is not proven",
    )
    return replace(cert, trace=cert.trace + (step,), conjectural=True)


def compute(g: GroupDescriptor, e, tol: Tolerances = DEFAULT, exact_cyclotomic: bool = False, log_base: str = "e"):
    """Validate, then dispatch to the theorem for the group's class."""
    report = validate(g, e, tol)
    if not report.ok:
        raise ValidationFailed(report)
    notes = [f"{f.severity} {f.code}: {f.message}" for f in report.findings]
    first = TraceStep("VALIDATED", ref.ARTIFACT, "; ".join(notes) if notes else "all hypotheses hold")

    if g.kind in ABELIAN_KINDS:
        cert = abelian_entropy(e.T, e.B, e.S, tol, exact_cyclotomic)
    elif g.kind == NILPOTENT:
        cert = nilpotent_entropy(e.toral_map, tol, exact_cyclotomic)
    elif g.kind == SEMISIMPLE_LINEAR:
        cert = semisimple_entropy(e, tol)
    elif g.kind == REDUCTIVE:
        cert = reductive_entropy(e.center, e.derived, g.pi_proper, tol, exact_cyclotomic)
    elif g.kind == COMPACT:
        cert = compact_entropy(e.toral_map, tol, exact_cyclotomic)
    elif g.kind == GENERAL:
        cert = conjectural_general_entropy(e.toral_R_prime, e.toral_R_mod_R_prime, tol, exact_cyclotomic)
    else:  # pragma: no cover - validate rejects unknown kinds
        raise InputError(f"unsupported variant {g.kind}", code="UNSUPPORTED_VARIANT")
    return replace(cert, trace=(first,) + cert.trace).in_base(log_base)
