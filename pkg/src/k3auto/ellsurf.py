"""Elliptic surfaces y^2 = x^3 + a(t) x + b(t) over an exact ground field.

The discriminant convention is Delta = 4a^3 + 27b^2 (no extra unit).  Fiber
types at finite places come from the valuation triple (v_a, v_b, v_Delta)
through the residue-characteristic-zero table; the place at infinity is
handled by the coordinate flip u = 1/t with a, b rescaled by u^{4k}, u^{6k}
where k is minimal with deg a <= 4k and deg b <= 6k (and k >= 1).  Euler
numbers obey sum(degree * e) = 12k exactly when the model is relatively
minimal; a failed match is reported, never silently repaired.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass

from .errors import (
    ContextMismatchError,
    InconsistentValuationsError,
    InvalidModelError,
)
from .polyfield import OMEGA, FieldContext, Place, Poly, gcdfree_basis, valuation

NON_MINIMAL = "NON_MINIMAL"

_IN_RE = re.compile(r"^I(\d+)(\*?)$")
_FIXED_EULER = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


def is_kodaira_type(symbol: str) -> bool:
    return symbol in _FIXED_EULER or bool(_IN_RE.match(symbol))


def is_multiplicative(symbol: str) -> bool:
    """I_n for some n >= 0 (the only types that admit multiple fibers)."""
    m = _IN_RE.match(symbol)
    return bool(m) and not m.group(2)


def fiber_euler_number(symbol: str) -> int:
    """e(I_n) = n, e(I_n*) = n + 6, and the fixed additive values."""
    if symbol in _FIXED_EULER:
        return _FIXED_EULER[symbol]
    m = _IN_RE.match(symbol)
    if not m:
        raise ValueError(f"unknown fiber type {symbol!r}")
    n = int(m.group(1))
    return n + 6 if m.group(2) else n


def _check_valuation(name: str, v):
    if v is OMEGA:
        return
    if isinstance(v, int) and v >= 0:
        return
    raise InconsistentValuationsError(f"{name} must be a nonnegative integer or OMEGA")


def minimalize_at_place(v_a, v_b, v_delta) -> tuple[object, object, int, int]:
    """Strip (4, 6, 12) while both thresholds are met; returns the reduced
    triple and the number of steps."""
    _check_valuation("v_a", v_a)
    _check_valuation("v_b", v_b)
    _check_valuation("v_delta", v_delta)
    if v_delta is OMEGA:
        raise InconsistentValuationsError("identically vanishing discriminant")
    steps = 0
    while v_a >= 4 and v_b >= 6:
        if v_delta < 12:
            raise InconsistentValuationsError(
                f"triple ({v_a}, {v_b}, {v_delta}) cannot come from 4a^3 + 27b^2"
            )
        v_a, v_b, v_delta = v_a - 4, v_b - 6, v_delta - 12
        steps += 1
    return v_a, v_b, v_delta, steps


def kodaira_type_from_valuations(v_a, v_b, v_delta) -> str:
    """Fiber type of a (local) Weierstrass equation from its valuation
    triple; NON_MINIMAL when a (4, 6, 12)-reduction still applies."""
    _check_valuation("v_a", v_a)
    _check_valuation("v_b", v_b)
    _check_valuation("v_delta", v_delta)
    if v_delta is OMEGA:
        raise InconsistentValuationsError("identically vanishing discriminant")

    def require(condition: bool, symbol: str) -> str:
        if not condition:
            raise InconsistentValuationsError(
                f"triple ({v_a}, {v_b}, {v_delta}) matches no fiber-type row"
            )
        return symbol

    if v_a >= 4 and v_b >= 6:
        return require(v_delta >= 12, NON_MINIMAL)
    if v_delta == 0:
        return require(v_a == 0 or v_b == 0, "I0")
    if v_a == 0:
        return require(v_b == 0, f"I{v_delta}")
    # now v_a >= 1 (possibly OMEGA) and v_delta >= 1
    if v_b == 1:
        return require(v_delta == 2, "II")
    if v_a == 1:
        return require(v_delta == 3, "III")
    if v_b == 2:
        return require(v_delta == 4, "IV")
    if v_a == 2 and v_b == 3:
        return require(v_delta >= 6, f"I{v_delta - 6}*")
    if v_a == 2 or v_b == 3:
        return require(v_delta == 6, "I0*")
    if v_b == 4:
        return require(v_delta == 8, "IV*")
    if v_a == 3:
        return require(v_delta == 9, "III*")
    if v_b == 5:
        return require(v_delta == 10, "II*")
    raise InconsistentValuationsError(
        f"triple ({v_a}, {v_b}, {v_delta}) matches no fiber-type row"
    )


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 = x^3 + a(t) x + b(t) with 4a^3 + 27b^2 not identically zero."""

    a: Poly
    b: Poly

    def __post_init__(self):
        if self.a.context != self.b.context:
            raise ContextMismatchError("a and b over different contexts")
        if (4 * self.a ** 3 + 27 * self.b ** 2).is_zero:
            raise InvalidModelError("discriminant 4a^3 + 27b^2 vanishes identically")

    @property
    def context(self) -> FieldContext:
        return self.a.context

    @property
    def k(self) -> int:
        """Minimal k >= 1 with deg a <= 4k and deg b <= 6k."""
        k = 1
        if not self.a.is_zero:
            k = max(k, -(-self.a.degree // 4))
        if not self.b.is_zero:
            k = max(k, -(-self.b.degree // 6))
        return k


def discriminant(model: WeierstrassModel) -> Poly:
    return 4 * model.a ** 3 + 27 * model.b ** 2


def j_map(model: WeierstrassModel) -> tuple[Poly, Poly]:
    """J = 4a^3 / (4a^3 + 27b^2) in lowest terms, denominator monic."""
    from .polyfield import poly_gcd

    num = 4 * model.a ** 3
    den = discriminant(model)
    if num.is_zero:
        return Poly.zero(model.context), Poly.constant(model.context, 1)
    g = poly_gcd(num, den)
    num, den = num // g, den // g
    lc = den.leading_coefficient()
    return num.scale(lc.inverse()), den.monic()


def flip_model(model: WeierstrassModel) -> WeierstrassModel:
    """The same surface in the coordinate u = 1/t: coefficients reversed
    after padding a to degree 4k and b to degree 6k."""
    k = model.k

    def reverse(p: Poly, length: int) -> Poly:
        if p.is_zero:
            return p
        coeffs = [p.coefficient(i) for i in range(length + 1)]
        return Poly(p.context, tuple(reversed(coeffs)))

    return WeierstrassModel(reverse(model.a, 4 * k), reverse(model.b, 6 * k))


@dataclass(frozen=True)
class KodairaFiber:
    """Classified fiber over one place.  Valuations are those of the model
    as given; the type is read off after (4, 6, 12)-minimalization."""

    place: Place
    kodaira_type: str
    v_a: object
    v_b: object
    v_delta: int
    minimalization_steps: int

    @property
    def degree(self) -> int:
        return self.place.degree

    @property
    def euler(self) -> int:
        return fiber_euler_number(self.kodaira_type)

    @property
    def is_singular(self) -> bool:
        return self.kodaira_type != "I0"

    def as_record(self) -> dict:
        def enc(v):
            return None if v is OMEGA else v

        return {
            "place": str(self.place),
            "degree": self.degree,
            "type": self.kodaira_type,
            "v_a": enc(self.v_a),
            "v_b": enc(self.v_b),
            "v_delta": self.v_delta,
            "euler": self.euler,
        }


@dataclass(frozen=True)
class SurfaceClass:
    """Coarse class read from k: rational (k=1), K3 (k=2), other."""

    kind: str
    k: int

    @classmethod
    def from_k(cls, k: int) -> "SurfaceClass":
        if k == 1:
            return cls("rational", 1)
        if k == 2:
            return cls("K3", 2)
        return cls("other", k)

    def __str__(self) -> str:
        return self.kind if self.kind != "other" else f"other(k={self.k})"


@dataclass(frozen=True)
class FiberAnalysis:
    k: int
    fibers: tuple[KodairaFiber, ...]
    surface: SurfaceClass
    relatively_minimal: bool

    @property
    def euler_total(self) -> int:
        return sum(f.degree * f.euler for f in self.fibers)

    @property
    def expected_euler(self) -> int:
        return 12 * self.k

    @property
    def singular_fibers(self) -> tuple[KodairaFiber, ...]:
        return tuple(f for f in self.fibers if f.is_singular)

    def as_report(self) -> dict:
        return {
            "k": self.k,
            "surface": str(self.surface),
            "relatively_minimal": self.relatively_minimal,
            "euler_total": self.euler_total,
            "expected_euler": self.expected_euler,
            "fibers": [f.as_record() for f in self.fibers],
        }


def _classify(place: Place, v_a, v_b, v_delta: int) -> KodairaFiber:
    ra, rb, rd, steps = minimalize_at_place(v_a, v_b, v_delta)
    symbol = kodaira_type_from_valuations(ra, rb, rd)
    return KodairaFiber(place, symbol, v_a, v_b, v_delta, steps)


def analyze_fibers(model: WeierstrassModel) -> FiberAnalysis:
    """Classify the fiber over every place in the gcd-free basis of
    {a, b, Delta} and over infinity, with exact Euler bookkeeping."""
    delta = discriminant(model)
    inputs = [p for p in (model.a, model.b, delta) if not p.is_zero]
    if any(not p.is_constant for p in inputs):
        basis, _ = gcdfree_basis(inputs)
    else:
        basis = []

    fibers = []
    for generator in basis:
        place = Place.finite(generator)
        fibers.append(
            _classify(
                place,
                valuation(model.a, place),
                valuation(model.b, place),
                valuation(delta, place),
            )
        )

    flipped = flip_model(model)
    origin = Place.finite(Poly.variable(model.context))
    at_origin = _classify(
        origin,
        valuation(flipped.a, origin),
        valuation(flipped.b, origin),
        valuation(discriminant(flipped), origin),
    )
    fibers.append(dataclasses.replace(at_origin, place=Place.infinity()))

    fibers_tuple = tuple(fibers)
    minimal = all(f.minimalization_steps == 0 for f in fibers_tuple)
    analysis = FiberAnalysis(
        k=model.k,
        fibers=fibers_tuple,
        surface=SurfaceClass.from_k(model.k),
        relatively_minimal=minimal,
    )
    if minimal and analysis.euler_total != analysis.expected_euler:
        raise InconsistentValuationsError(
            "internal error: Euler sum differs from 12k on a minimal model"
        )
    return analysis


@dataclass(frozen=True)
class FiberConfiguration:
    """A multiset of fibers with multiplicities: entries are
    (multiplicity, type, count).  Multiple fibers (multiplicity > 1)
    exist only for the I_n types."""

    entries: tuple[tuple[int, str, int], ...]

    def __post_init__(self):
        for mult, symbol, count in self.entries:
            if not is_kodaira_type(symbol):
                raise ValueError(f"unknown fiber type {symbol!r}")
            if mult < 1 or count < 1:
                raise ValueError("multiplicity and count must be positive")
            if mult > 1 and not is_multiplicative(symbol):
                raise ValueError(
                    f"multiplicity {mult} on type {symbol}: only I_n fibers "
                    "can be multiple"
                )

    @property
    def euler_total(self) -> int:
        """Euler number; unchanged by multiplicities."""
        return sum(count * fiber_euler_number(s) for _, s, count in self.entries)

    def __str__(self) -> str:
        parts = []
        for mult, symbol, count in self.entries:
            tag = f"{mult}x{symbol}" if mult > 1 else symbol
            parts.append(tag if count == 1 else f"{count}*{tag}")
        return " + ".join(parts)


@dataclass(frozen=True)
class EulerCheck:
    passed: bool
    total: int
    expected: int


def config_euler_check(config: FiberConfiguration, expected: int) -> EulerCheck:
    """Compare the configuration's Euler sum with an expected total."""
    total = config.euler_total
    return EulerCheck(total == expected, total, expected)
