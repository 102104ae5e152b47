"""Numeric slack for the whole package, collected in one record.

Nothing downstream hard-codes a tolerance: every routine takes a
``Tolerances`` (defaulting to :data:`DEFAULT`) and reads what it needs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # relative tolerance for generic comparisons and null spaces
    rel: float = 1e-9
    # eigenvalues closer than cluster * (1 + |m|) share a generalized eigenspace
    cluster: float = 1e-7
    # | |lambda| - 1 | <= modulus_band counts as modulus exactly one
    modulus_band: float = 1e-9
    # |det m| <= singular * |m| ** dim is treated as singular
    singular: float = 1e-12
    # checks of decomposition invariants (reconstruction, commutation)
    invariant: float = 1e-8
    # orbit norms above this are declared divergent
    divergence: float = 1e12

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)


DEFAULT = Tolerances()
