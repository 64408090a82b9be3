"""Exact eigenvalue bookkeeping for finite-order isometries of the K3
cohomology lattice.

Eigenvalue sets are stored only as whole Galois orbits: full blocks Phi(d)
(all primitive d-th roots of unity at once) plus explicitly signed +-1
units.  Arbitrary single primitive roots are inexpressible, which keeps
every trace a rational integer.  A full Phi(d) block has rank phi(d)
(Euler's totient) and trace mu(d) (the Moebius function).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from sympy import divisors, mobius, totient

from .errors import PatternError


def _phi(d: int) -> int:
    return int(totient(d))


def _mu(d: int) -> int:
    return int(mobius(d))


@dataclass(frozen=True)
class CyclotomicMultiset:
    """A Galois-stable eigenvalue multiset: +-1 units and full Phi(d) blocks.

    Blocks with d = 1 or d = 2 are normalized into the unit counts, so
    ``blocks`` only carries d >= 3, sorted by d.
    """

    plus_ones: int = 0
    minus_ones: int = 0
    blocks: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.plus_ones < 0 or self.minus_ones < 0:
            raise PatternError("unit counts must be nonnegative")
        seen = 0
        for d, count in self.blocks:
            if d < 3:
                raise PatternError("blocks with d < 3 must be folded into units")
            if count <= 0:
                raise PatternError("block counts must be positive")
            if d <= seen:
                raise PatternError("blocks must be sorted by strictly increasing d")
            seen = d

    @classmethod
    def from_counts(cls, counts: Mapping[int, int] | None = None, *,
                    plus_ones: int = 0, minus_ones: int = 0) -> "CyclotomicMultiset":
        """Build from {d: count}; d = 1 and d = 2 fold into the unit counts."""
        merged: dict[int, int] = {}
        for d, count in (counts or {}).items():
            if d <= 0:
                raise PatternError("block order d must be positive")
            if count < 0:
                raise PatternError("block counts must be nonnegative")
            if count == 0:
                continue
            if d == 1:
                plus_ones += count
            elif d == 2:
                minus_ones += count
            else:
                merged[d] = merged.get(d, 0) + count
        return cls(plus_ones, minus_ones, tuple(sorted(merged.items())))

    @classmethod
    def units(cls, plus: int = 0, minus: int = 0) -> "CyclotomicMultiset":
        return cls(plus, minus, ())

    @classmethod
    def block(cls, d: int, count: int = 1) -> "CyclotomicMultiset":
        return cls.from_counts({d: count})

    @property
    def rank(self) -> int:
        return (self.plus_ones + self.minus_ones
                + sum(count * _phi(d) for d, count in self.blocks))

    @property
    def trace(self) -> int:
        return (self.plus_ones - self.minus_ones
                + sum(count * _mu(d) for d, count in self.blocks))

    def counts(self) -> dict[int, int]:
        """The multiset as {d: count}, units reported as d = 1 and d = 2."""
        out: dict[int, int] = {}
        if self.plus_ones:
            out[1] = self.plus_ones
        if self.minus_ones:
            out[2] = self.minus_ones
        out.update({d: count for d, count in self.blocks})
        return out

    def combine(self, other: "CyclotomicMultiset") -> "CyclotomicMultiset":
        merged = self.counts()
        for d, count in other.counts().items():
            merged[d] = merged.get(d, 0) + count
        return CyclotomicMultiset.from_counts(merged)

    __add__ = combine

    def power(self, exponent: int) -> "CyclotomicMultiset":
        """Eigenvalues of g^exponent given those of g.

        Each primitive d-th root goes to a primitive d'-th root where
        d' = d / gcd(d, exponent), and a full Phi(d) block becomes
        phi(d)/phi(d') copies of Phi(d').
        """
        result: dict[int, int] = {}
        for d, count in self.counts().items():
            d_new = d // math.gcd(d, exponent)
            copies = _phi(d) // _phi(d_new)
            result[d_new] = result.get(d_new, 0) + count * copies
        return CyclotomicMultiset.from_counts(result)

    def sort_key(self):
        return tuple((d, -count) for d, count in sorted(self.counts().items()))

    def as_literal(self) -> str:
        """Render in the pattern-literal grammar, e.g. ``1*4, -1*8, Phi(11)``."""
        parts = []
        if self.plus_ones:
            parts.append("1" if self.plus_ones == 1 else f"1*{self.plus_ones}")
        if self.minus_ones:
            parts.append("-1" if self.minus_ones == 1 else f"-1*{self.minus_ones}")
        for d, count in self.blocks:
            parts.append(f"Phi({d})" if count == 1 else f"Phi({d})*{count}")
        return ", ".join(parts)

    def __str__(self) -> str:
        return self.as_literal() or "(empty)"


def trace_of_multiset(m: CyclotomicMultiset) -> int:
    """Sum of the eigenvalues, always a rational integer."""
    return m.trace


@dataclass(frozen=True)
class IsometryPattern:
    """Eigenvalue pattern of an isometry split along S (algebraic) and T
    (transcendental)."""

    algebraic: CyclotomicMultiset
    transcendental: CyclotomicMultiset

    @property
    def rank(self) -> int:
        return self.algebraic.rank + self.transcendental.rank

    def as_literal(self) -> str:
        return f"S: [{self.algebraic.as_literal()}]; T: [{self.transcendental.as_literal()}]"

    def __str__(self) -> str:
        return self.as_literal()


def lefschetz_number(pattern: IsometryPattern) -> int:
    """Topological Lefschetz fixed-point number 2 + tr(S) + tr(T).

    The ``2 +`` hardcodes the H^0 and H^4 contributions of a surface with
    first Betti number zero; the pattern must cover all of H^2 (rank 22).
    """
    if pattern.rank != 22:
        raise PatternError(
            f"Lefschetz number needs a full rank-22 pattern, got rank {pattern.rank}"
        )
    return 2 + pattern.algebraic.trace + pattern.transcendental.trace


def char_poly_decompositions(order: int, rank: int, *,
                             forbid: Iterable[int] = (),
                             require: Iterable[int] = (),
                             allowed: Iterable[int] | None = None,
                             fixed: Mapping[int, int] | None = None,
                             ) -> list[CyclotomicMultiset]:
    """All multisets of blocks Phi(d), d | order, with total rank ``rank``.

    Constraints: ``forbid`` bans given d entirely; ``require`` demands at
    least one block of each given d; ``allowed`` (if given) restricts d to
    that set; ``fixed`` pins exact counts for given d.  Output is
    canonically ordered and possibly empty.
    """
    if order < 1 or rank < 0:
        raise ValueError("need order >= 1 and rank >= 0")
    forbid = set(forbid)
    require = set(require)
    fixed = dict(fixed or {})
    ds = [d for d in divisors(order) if d not in forbid]
    if allowed is not None:
        ds = [d for d in ds if d in set(allowed)]
    if require - set(ds) or set(fixed) - set(ds):
        return []
    # large phi first so the remaining-rank bound prunes early
    ds.sort(key=_phi, reverse=True)

    results: list[CyclotomicMultiset] = []

    def walk(index: int, remaining: int, chosen: dict[int, int]):
        if index == len(ds):
            if remaining == 0 and require <= {d for d, c in chosen.items() if c}:
                results.append(CyclotomicMultiset.from_counts(chosen))
            return
        d = ds[index]
        step = _phi(d)
        if d in fixed:
            counts = [fixed[d]]
        else:
            counts = range(remaining // step + 1)
        for count in counts:
            used = count * step
            if used > remaining:
                break
            chosen[d] = count
            walk(index + 1, remaining - used, chosen)
        chosen.pop(d, None)

    walk(0, rank, {})
    results.sort(key=CyclotomicMultiset.sort_key)
    return results


def local_curve_possible(weights_1: Iterable[int], weights_2: Iterable[int],
                         modulus: int) -> bool:
    """Whether some pair (a, b) from the two weight sets has a + b == 0 mod
    modulus — the condition for a smooth invariant curve through both fixed
    points to exist.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    w1 = [a % modulus for a in weights_1]
    w2 = [b % modulus for b in weights_2]
    if 0 in w1 or 0 in w2:
        raise ValueError("weights must be nonzero mod modulus")
    return any((a + b) % modulus == 0 for a in w1 for b in w2)


@dataclass(frozen=True)
class LocalAction:
    """Linearized action at an isolated fixed point: eigenvalues
    (zeta^p, zeta^q) with zeta a primitive ``order``-th root."""

    order: int
    weights: tuple[int, int]

    def __post_init__(self):
        if self.order < 2:
            raise PatternError("order must be at least 2")
        if any(w % self.order == 0 for w in self.weights):
            raise PatternError("an isolated fixed point needs nonzero weights")

    @property
    def omega_weight(self) -> int:
        """Weight of the action on the canonical form (sum of the two)."""
        return (self.weights[0] + self.weights[1]) % self.order
