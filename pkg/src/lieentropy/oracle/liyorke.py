"""Finite search for Li-Yorke pairs of a torus endomorphism.

A pair (a, b) is a Li-Yorke pair if along some times n_k the pair of
orbits returns to (a, b), and along other times m_k both orbits approach a
common point c.  A finite scan can only see approximate events (within
``delta``) at finitely many times, so a returned witness is evidence and
a failed search proves nothing.

Points are stored exactly as integer vectors over the denominator 2**L,
with L large enough that the first ``budget`` iterates keep at least 64
correct bits.  The second point of each candidate pair is the first point
plus the fractional parts of square roots of primes, truncated to L bits.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..linalg import as_integer_matrix

CAVEAT = "absence of a witness within the budget is not a proof of zero entropy"
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_BASE_POINTS = (0.0, 0.5, 0.25)
_GUARD_BITS = 64


@dataclass(frozen=True)
class LiYorkeWitness:
    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]
    return_times: tuple[int, ...]
    proximal_times: tuple[int, ...]
    return_gaps: tuple[float, ...]
    proximal_gaps: tuple[float, ...]
    delta: float

    def to_dict(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "c": list(self.c),
            "return_times": list(self.return_times),
            "proximal_times": list(self.proximal_times),
            "gaps": {"return": list(self.return_gaps), "proximal": list(self.proximal_gaps)},
            "delta": self.delta,
        }


@dataclass(frozen=True)
class LiYorkeSearch:
    witness: LiYorkeWitness | None
    steps: int
    pairs_tried: int
    notes: tuple[str, ...] = field(default=())

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "steps": self.steps,
            "pairs_tried": self.pairs_tried,
            "notes": list(self.notes),
            "caveat": CAVEAT,
        }


def _frac_sqrt_bits(k: int, bits: int) -> int:
    """floor(frac(sqrt(k)) * 2**bits), exactly."""
    return math.isqrt(k << (2 * bits)) & ((1 << bits) - 1)


class _Orbit:
    """Exact orbit arithmetic over 2**bits; distances use the top 64 bits only."""

    TOP = 64

    def __init__(self, t: np.ndarray, bits: int):
        self.rows = [[int(v) for v in row] for row in t.tolist()]
        self.bits = bits
        self.mask = (1 << bits) - 1
        self.one = 1 << bits
        self.shift = bits - self.TOP
        self.top_one = 1 << self.TOP
        self.top_mask = self.top_one - 1

    def step(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(a * v for a, v in zip(row, x)) & self.mask for row in self.rows)

    def top(self, x) -> tuple[int, ...]:
        return tuple(v >> self.shift for v in x)

    def dist(self, x, y) -> int:
        """Wrap-around max distance between two top-bit vectors, in units of 2**-64."""
        worst = 0
        for u, v in zip(x, y):
            d = (u - v) & self.top_mask
            worst = max(worst, min(d, self.top_one - d))
        return worst

    def ratio(self, v: int) -> float:
        return v / float(self.top_one)

    def to_float(self, x) -> tuple[float, ...]:
        return tuple(v / float(self.top_one) for v in x)


def _scan(orbit: _Orbit, a0, b0, steps: int, threshold: int, hits: int, delta: float):
    a, b = a0, b0
    ta0, tb0 = orbit.top(a0), orbit.top(b0)
    returns, proximal = [], []
    ret_gaps, prox_gaps = [], []
    c = None
    for n in range(1, steps + 1):
        a, b = orbit.step(a), orbit.step(b)
        if a == a0 and b == b0:
            # exact period: every later event repeats one already seen
            return None, n, f"pair orbit is periodic with period {n}"
        ta, tb = orbit.top(a), orbit.top(b)
        d_ab = orbit.dist(ta, tb)
        if d_ab < threshold and len(proximal) < hits:
            proximal.append(n)
            prox_gaps.append(orbit.ratio(d_ab))
            c = ta
        if len(returns) < hits:
            gap = max(orbit.dist(ta, ta0), orbit.dist(tb, tb0))
            if gap < threshold:
                returns.append(n)
                ret_gaps.append(orbit.ratio(gap))
        if len(returns) >= hits and len(proximal) >= hits:
            w = LiYorkeWitness(
                orbit.to_float(ta0),
                orbit.to_float(tb0),
                orbit.to_float(c),
                tuple(returns),
                tuple(proximal),
                tuple(ret_gaps),
                tuple(prox_gaps),
                delta,
            )
            return w, n, None
    return None, steps, None


def search_li_yorke(t, budget: int = 10**6, delta: float = 1e-3, hits: int = 3) -> LiYorkeSearch:
    """Scan candidate pairs for ``hits`` return times and ``hits`` proximal times.

    ``budget`` bounds the total number of map applications over all pairs.
    """
    t = as_integer_matrix(t, allow_empty=False)
    if budget < 1:
        raise InputError("budget must be at least 1")
    if not 0 < delta < 0.5:
        raise InputError("delta must lie in (0, 0.5)")
    p = t.shape[0]
    if p > len(_PRIMES):
        raise InputError(f"dimension {p} exceeds the supported {len(_PRIMES)}")
    candidates = [(base, shift) for base in _BASE_POINTS for shift in (0, 1)]
    share = max(1, budget // len(candidates))
    growth = max(1, int(np.max(np.sum(np.abs(t), axis=1))))
    bits = _GUARD_BITS + math.ceil(share * math.log2(growth)) if growth > 1 else _GUARD_BITS
    orbit = _Orbit(t, bits)
    threshold = int(delta * orbit.top_one)

    used, tried, notes = 0, 0, []
    for base, shift in candidates:
        if used >= budget:
            break
        a0 = tuple(int(Fraction(base) * orbit.one) for _ in range(p))
        offset = tuple(_frac_sqrt_bits(_PRIMES[(j + shift) % len(_PRIMES)], bits) for j in range(p))
        b0 = tuple((u + v) & orbit.mask for u, v in zip(a0, offset))
        if orbit.dist(orbit.top(a0), orbit.top(b0)) <= threshold:
            continue
        tried += 1
        witness, n, note = _scan(orbit, a0, b0, min(share, budget - used), threshold, hits, delta)
        used += n
        if note:
            notes.append(f"a={orbit.to_float(orbit.top(a0))}: {note}")
        if witness is not None:
            return LiYorkeSearch(witness, used, tried, tuple(notes))
    notes.append(CAVEAT)
    return LiYorkeSearch(None, used, tried, tuple(notes))


def li_yorke_search(t, budget: int = 10**6, delta: float = 1e-3, hits: int = 3) -> LiYorkeWitness | None:
    """First witness found within the budget, or None (which proves nothing)."""
    return search_li_yorke(t, budget, delta, hits).witness
