"""Integer lattices given by Gram matrices.

Builders cover the hyperbolic plane U, its scalings U(m), and the
negative-definite A/D/E root lattices (diagonal -2, adjacency +1), combined
with `+` (orthogonal sum) and a `(m)` twist suffix.  Invariants are exact:
signatures come from rational congruence diagonalization (which also yields
the determinant, since every transform used preserves it), discriminant
groups from the Smith normal form over Z.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from sympy.matrices.normalforms import invariant_factors as _sympy_invariant_factors

from .errors import LatticeError, LatticeExprError

GramRow = tuple[int, ...]
Gram = tuple[GramRow, ...]


@dataclass(frozen=True)
class Lattice:
    """A finitely generated free Z-module with an integer Gram matrix."""

    gram: Gram

    def __post_init__(self):
        n = len(self.gram)
        rows = []
        for row in self.gram:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
            rows.append(tuple(int(x) for x in row))
        gram = tuple(rows)
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def twist(self, m: int) -> "Lattice":
        if m == 0:
            raise LatticeError("twist by zero")
        return Lattice(tuple(tuple(m * x for x in row) for row in self.gram))

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        rows = []
        for i in range(n):
            rows.append(self.gram[i] + (0,) * m)
        for j in range(m):
            rows.append((0,) * n + other.gram[j])
        return Lattice(tuple(rows))

    def __add__(self, other: "Lattice") -> "Lattice":
        return self.direct_sum(other)


@dataclass(frozen=True)
class SignaturePair:
    """Counts of positive and negative squares; zeros only for degenerate
    Gram matrices."""

    positives: int
    negatives: int
    zeros: int = 0

    @property
    def pair(self) -> tuple[int, int]:
        return (self.positives, self.negatives)

    def __str__(self) -> str:
        base = f"({self.positives}, {self.negatives})"
        return base if not self.zeros else f"{base} + {self.zeros} zeros"


@dataclass(frozen=True)
class DiscGroup:
    """Invariant factors (each dividing the next, 1's omitted) of the
    finite group dual(L)/L."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " + ".join(f"Z/{f}" for f in self.invariant_factors)


def _adjacency_gram(n: int, edges: Sequence[tuple[int, int]]) -> Lattice:
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = -2
    for i, j in edges:
        gram[i][j] = gram[j][i] = 1
    return Lattice(tuple(tuple(row) for row in gram))


def hyperbolic_plane(m: int = 1) -> Lattice:
    """U(m): rank two, Gram [[0, m], [m, 0]]."""
    if m == 0:
        raise LatticeError("U(0) is degenerate")
    return Lattice(((0, m), (m, 0)))


def root_lattice_A(n: int) -> Lattice:
    if n < 1:
        raise LatticeError("A(n) needs n >= 1")
    return _adjacency_gram(n, [(i, i + 1) for i in range(n - 1)])


def root_lattice_D(n: int) -> Lattice:
    if n < 4:
        raise LatticeError("D(n) needs n >= 4")
    edges = [(i, i + 1) for i in range(n - 2)]
    edges.append((n - 3, n - 1))
    return _adjacency_gram(n, edges)


def root_lattice_E(n: int) -> Lattice:
    if n not in (6, 7, 8):
        raise LatticeError("E(n) needs n in {6, 7, 8}")
    # center 0 with legs of lengths 1, 2 and n-4
    edges = [(0, 1), (0, 2), (2, 3)]
    prev = 0
    for node in range(4, n):
        edges.append((prev, node))
        prev = node
    return _adjacency_gram(n, edges)


class _LatticeExprParser:
    """expr := term ('+' term)*; term := atom ('(' INT ')')*;
    atom := NAME [index] | '(' expr ')'."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _int(self) -> int:
        self._skip_ws()
        start = self.pos
        if self._peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise LatticeExprError(f"expected an integer at position {start}")
        return int(self.text[start:self.pos])

    def _paren_int(self) -> int:
        self.pos += 1  # consume '('
        value = self._int()
        if self._peek() != ")":
            raise LatticeExprError(f"expected ')' at position {self.pos}")
        self.pos += 1
        return value

    def parse(self) -> Lattice:
        lat = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise LatticeExprError(f"trailing input at position {self.pos}")
        return lat

    def _expr(self) -> Lattice:
        lat = self._term()
        while self._peek() == "+":
            self.pos += 1
            lat = lat + self._term()
        return lat

    def _term(self) -> Lattice:
        lat = self._atom()
        while self._peek() == "(":
            lat = lat.twist(self._paren_int())
        return lat

    def _atom(self) -> Lattice:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            lat = self._expr()
            if self._peek() != ")":
                raise LatticeExprError(f"expected ')' at position {self.pos}")
            self.pos += 1
            return lat
        if ch not in "UADE":
            raise LatticeExprError(f"expected a lattice name at position {self.pos}")
        self.pos += 1
        if ch == "U":
            if self._peek() == "(":
                return hyperbolic_plane(self._paren_int())
            return hyperbolic_plane()
        # A/D/E take an index, written A10 or A(10)
        if self._peek() == "(":
            index = self._paren_int()
        else:
            index = self._int()
        try:
            if ch == "A":
                return root_lattice_A(index)
            if ch == "D":
                return root_lattice_D(index)
            return root_lattice_E(index)
        except LatticeError as exc:
            raise LatticeExprError(str(exc)) from exc


def build_lattice(expr: str) -> Lattice:
    """Build a lattice from an expression like "U + A10" or "U(11)"."""
    try:
        return _LatticeExprParser(expr).parse()
    except LatticeError as exc:
        raise LatticeExprError(str(exc)) from exc


def determinant_and_signature(lattice: Lattice) -> tuple[int, SignaturePair]:
    """Exact determinant and signature in one congruence diagonalization.

    Every transform used (simultaneous row/column swap, symmetric
    elimination, adding one row-and-column into another) preserves the
    determinant, so the product of the resulting diagonal is det(Gram).
    Zero diagonal entries of a degenerate matrix are counted separately.
    """
    n = lattice.rank
    g = [[Fraction(x) for x in row] for row in lattice.gram]

    def swap(i: int, j: int):
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]

    positives = negatives = zeros = 0
    det = Fraction(1)
    for i in range(n):
        if not g[i][i]:
            pivot_row = next((j for j in range(i + 1, n) if g[j][j]), None)
            if pivot_row is not None:
                swap(i, pivot_row)
            else:
                off = next(
                    ((r, c) for r in range(i, n) for c in range(r + 1, n) if g[r][c]),
                    None,
                )
                if off is None:
                    zeros += n - i
                    det = Fraction(0)
                    break
                r, c = off
                if r != i:
                    swap(i, r)
                # both diagonal entries vanish, so this makes g[i][i] = 2*g[i][c]
                for k in range(n):
                    g[i][k] += g[c][k]
                for k in range(n):
                    g[k][i] += g[k][c]
        p = g[i][i]
        det *= p
        if p > 0:
            positives += 1
        else:
            negatives += 1
        for r in range(i + 1, n):
            if not g[r][i]:
                continue
            f = g[r][i] / p
            for k in range(n):
                g[r][k] -= f * g[i][k]
            for k in range(n):
                g[k][r] -= f * g[k][i]

    if det.denominator != 1:
        raise LatticeError("internal error: non-integral determinant")
    return int(det), SignaturePair(positives, negatives, zeros)


def discriminant_group(lattice: Lattice) -> DiscGroup:
    """Invariant factors of the Gram matrix over Z, omitting 1's."""
    factors = _sympy_invariant_factors(sympy.Matrix(lattice.gram))
    out = []
    for f in factors:
        f = abs(int(f))
        if f == 0:
            raise LatticeError("degenerate lattice has no discriminant group")
        if f != 1:
            out.append(f)
    return DiscGroup(tuple(out))


def is_p_elementary(lattice: Lattice, p: int) -> bool:
    """dual(L)/L isomorphic to (Z/p)^s for some s >= 0."""
    if p < 2:
        raise LatticeError("p must be at least 2")
    return all(f == p for f in discriminant_group(lattice).invariant_factors)


def dual_gram(lattice: Lattice) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the dual basis: the exact inverse of the Gram matrix."""
    n = lattice.rank
    a = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(lattice.gram)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise LatticeError("degenerate lattice has no dual Gram matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def even_unimodular_exists(positives: int, negatives: int) -> bool:
    """Whether an even unimodular lattice of this signature exists:
    the signature difference must vanish mod 8."""
    if positives < 0 or negatives < 0 or positives + negatives == 0:
        raise LatticeError("signature counts must be nonnegative and not both zero")
    return (positives - negatives) % 8 == 0


@dataclass(frozen=True)
class DivisorSolveResult:
    """Solution vectors, and whether the list is certified complete (true
    only for rank <= 2 with a usable linear constraint; bounded box
    searches are never certified)."""

    solutions: tuple[tuple[int, ...], ...]
    complete: bool


def _apply_gram(gram: Gram, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in gram)


def _form(gram: Gram, v: Sequence[int], w: Sequence[int]) -> int:
    return sum(v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w)))


def _box_search(gram, constraints, norm, bound):
    n = len(gram)
    hits = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if _form(gram, v, v) != norm:
            continue
        if all(_form(gram, v, w) == c for w, c in constraints):
            hits.append(tuple(v))
    return hits


def divisor_class_solve(
    lattice: Lattice,
    dot_constraints: Sequence[tuple[Sequence[int], int]],
    norm: int,
    bound: int = 25,
) -> DivisorSolveResult:
    """Integer vectors v with v.v = norm and v.w = c for each constraint.

    In rank <= 2 with a constraint whose Gram image is nonzero, the linear
    equation is solved first and the quadratic condition restricted to that
    line, so the answer is complete no matter the bound.  Otherwise all
    vectors with entries bounded by `bound` are tried and the result says so.
    """
    gram = lattice.gram
    n = lattice.rank
    constraints = [(tuple(int(x) for x in w), int(c)) for w, c in dot_constraints]
    for w, _ in constraints:
        if len(w) != n:
            raise LatticeError("constraint vector of wrong length")

    if n == 2:
        usable = next(
            ((w, c) for w, c in constraints if any(_apply_gram(gram, w))), None
        )
        if usable is not None:
            w0, c0 = usable
            alpha, beta = _apply_gram(gram, w0)
            g = math.gcd(alpha, beta)
            if c0 % g:
                return DivisorSolveResult((), True)
            # particular solution of alpha*x + beta*y = c0
            u, v = _ext_gcd(alpha, beta)
            base = (u * (c0 // g), v * (c0 // g))
            direction = (beta // g, -alpha // g)
            candidates = _solve_on_line(gram, base, direction, constraints, norm)
            if candidates is None:
                # the quadratic condition degenerated to 0 = 0 on the line
                return DivisorSolveResult(tuple(sorted(_box_search(gram, constraints, norm, bound))), False)
            return DivisorSolveResult(tuple(sorted(candidates)), True)

    return DivisorSolveResult(
        tuple(sorted(_box_search(gram, constraints, norm, bound))), False
    )


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    """(u, v) with a*u + b*v = gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_u, old_v = -old_u, -old_v
    return old_u, old_v

def _solve_on_line(gram, base, direction, constraints, norm):
    """Solutions base + k*direction; None when every k works (caller falls
    back to a box search)."""
    ks: list[int] | None = None  # None = unrestricted so far
    for w, c in constraints:
        img = _apply_gram(gram, w)
        slope = sum(i * d for i, d in zip(img, direction))
        offset = sum(i * b for i, b in zip(img, base))
        if slope == 0:
            if offset != c:
                return []
            continue
        if (c - offset) % slope:
            return []
        k = (c - offset) // slope
        ks = [k] if ks is None else [x for x in ks if x == k]

    a = _form(gram, direction, direction)
    b = 2 * _form(gram, base, direction)
    c = _form(gram, base, base) - norm
    if a == 0 and b == 0:
        if c != 0:
            return []
        if ks is None:
            return None  # whole line solves the system
        roots = ks
    elif a == 0:
        roots = [-c // b] if c % b == 0 else []
    else:
        disc = b * b - 4 * a * c
        if disc < 0:
            roots = []
        else:
            r = math.isqrt(disc)
            if r * r != disc:
                roots = []
            else:
                roots = []
                for num in (-b + r, -b - r):
                    if num % (2 * a) == 0:
                        roots.append(num // (2 * a))
    if ks is not None:
        roots = [k for k in roots if k in ks]
    return [
        tuple(bi + k * di for bi, di in zip(base, direction)) for k in sorted(set(roots))
    ]


def brute_force_even_rank2(det_target: int, entry_bound: int) -> list[Lattice]:
    """All even rank-2 Gram matrices [[2a, b], [b, 2c]] with entries
    |a|, |b|, |c| <= entry_bound and determinant 4ac - b^2 = det_target."""
    if entry_bound < 0:
        raise LatticeError("entry bound must be nonnegative")
    out = []
    span = range(-entry_bound, entry_bound + 1)
    for a in span:
        for b in span:
            bb = b * b
            for c in span:
                if 4 * a * c - bb == det_target:
                    out.append(Lattice(((2 * a, b), (b, 2 * c))))
    return out
