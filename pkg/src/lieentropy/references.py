"""Citation labels attached to validation findings and certificate traces.

Certificates must be auditable against the source theorems, so every rule
carries a short section label.  They live here so the wording is uniform.
"""

VARIATIONAL = "Section 2, Proposition 2.1"
PRODUCT = "Section 2, Proposition 2.2"
FACTOR = "Section 2, Proposition 2.3"
BOWEN = "Section 2, Proposition 2.4 (Bowen's formula)"
PRINCIPAL_BUNDLE = "Section 2, Proposition 2.5"
LI_YORKE_DEF = "Section 2, Definition 2.6"
LI_YORKE = "Section 2, Proposition 2.9"
PROPERNESS = "Section 2, Lemma (proper iff compact kernel)"
RECURRENT = "Section 2, Proposition 2.10"
TORUS = "Section 1 (entropy of torus endomorphisms)"
LINEAR_ZERO = "Section 1 (linear isomorphisms have zero entropy)"
BOWEN_UPPER = "Section 1 (Bowen's formula is only an upper bound)"
ABELIAN = "Section 3 (abelian case)"
NILPOTENT_QUOTIENT = "Section 4, Proposition 4.1"
NILPOTENT = "Section 4, Theorem 4.3"
SEMISIMPLE_POWER = "Section 5, Proposition 5.1"
SEMISIMPLE_CONJ = "Section 5, Lemma 5.2"
SEMISIMPLE = "Section 5, Theorem 5.3"
REDUCTIVE_SPLIT = "Section 6, Lemma 6.1"
REDUCTIVE_PROPER = "Section 6, Proposition 6.2"
REDUCTIVE_ASSOC = "Section 6, Proposition 6.3"
REDUCTIVE = "Section 6, Proposition 6.5"
REDUCTIVE_LINEAR = "Section 6, corollary for linear reductive groups"
COMPACT = "Section 6, theorem for compact groups"
GENERAL = "Section 7 (general case, conjectural)"
ARTIFACT = "artifact plumbing"
