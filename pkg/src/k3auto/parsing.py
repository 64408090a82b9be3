"""Small text grammars: polynomials and eigenvalue-pattern literals.

Polynomial grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)*
    atom   := '(' expr ')' | INT ['/' INT] | NAME

`t` is the variable, `w` the quadratic generator (w^2 = d, only valid in a
quadratic context); any other NAME must be supplied through `bindings`.

Eigenvalue-pattern grammar:

    pattern  := 'S' ':' multiset ';' 'T' ':' multiset
    multiset := '[' (item (',' item)*)? ']'
    item     := ('1' | '-1' | 'Phi' '(' INT ')') ('*' INT)?

Errors carry the character position that broke the parse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .errors import ParseError
from .isometry import CyclotomicMultiset, IsometryPattern
from .polyfield import FieldContext, FieldElement, Poly

_BindingValue = Union[FieldElement, int, Fraction]


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("INT", text[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("NAME", text[i:j], i))
                i = j
                continue
            if ch in "+-*^/()[],;:":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("END", "", len(text)))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.next()


class _PolyParser:
    def __init__(self, text: str, context: FieldContext,
                 bindings: Mapping[str, _BindingValue] | None):
        self.lx = _Lexer(text)
        self.context = context
        self.bindings = dict(bindings or {})

    def parse(self) -> Poly:
        p = self._expr()
        tok = self.lx.peek()
        if tok[0] != "END":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return p

    def _expr(self) -> Poly:
        p = self._term()
        while self.lx.peek()[0] in ("+", "-"):
            op = self.lx.next()[0]
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self) -> Poly:
        p = self._unary()
        while self.lx.peek()[0] == "*":
            self.lx.next()
            p = p * self._unary()
        return p

    def _unary(self) -> Poly:
        if self.lx.peek()[0] == "-":
            self.lx.next()
            return -self._unary()
        return self._power()

    def _power(self) -> Poly:
        p = self._atom()
        while self.lx.peek()[0] == "^":
            self.lx.next()
            tok = self.lx.expect("INT")
            p = p ** int(tok[1])
        return p

    def _atom(self) -> Poly:
        kind, value, pos = self.lx.peek()
        if kind == "(":
            self.lx.next()
            p = self._expr()
            self.lx.expect(")")
            return p
        if kind == "INT":
            self.lx.next()
            num = int(value)
            if self.lx.peek()[0] == "/":
                self.lx.next()
                dtok = self.lx.expect("INT")
                den = int(dtok[1])
                if den == 0:
                    raise ParseError("zero denominator", dtok[2])
                return Poly.constant(self.context, Fraction(num, den))
            return Poly.constant(self.context, num)
        if kind == "NAME":
            self.lx.next()
            if value == "t":
                return Poly.variable(self.context)
            if value == "w":
                if not self.context.is_quadratic:
                    raise ParseError("'w' needs a quadratic context", pos)
                return Poly.constant(self.context, self.context.generator())
            if value in self.bindings:
                bound = self.bindings[value]
                if not isinstance(bound, FieldElement):
                    bound = self.context.element(bound)
                elif bound.context != self.context:
                    raise ParseError(f"binding {value!r} from another context", pos)
                return Poly.constant(self.context, bound)
            raise ParseError(f"unbound name {value!r}", pos)
        raise ParseError(f"expected a value, found {value or 'end of input'!r}", pos)


def parse_poly(text: str, context: FieldContext,
               bindings: Mapping[str, _BindingValue] | None = None) -> Poly:
    """Parse a polynomial in t over the given context."""
    return _PolyParser(text, context, bindings).parse()


def _parse_multiset_items(lx: _Lexer) -> CyclotomicMultiset:
    lx.expect("[")
    counts: dict[int, int] = {}
    if lx.peek()[0] != "]":
        while True:
            _parse_pattern_item(lx, counts)
            if lx.peek()[0] != ",":
                break
            lx.next()
    lx.expect("]")
    return CyclotomicMultiset.from_counts(counts)


def _parse_pattern_item(lx: _Lexer, counts: dict[int, int]) -> None:
    kind, value, pos = lx.next()
    if kind == "-":
        tok = lx.expect("INT")
        if tok[1] != "1":
            raise ParseError("only -1 units are allowed", tok[2])
        d = 2
    elif kind == "INT":
        if value != "1":
            raise ParseError("only +-1 units are allowed", pos)
        d = 1
    elif kind == "NAME" and value == "Phi":
        lx.expect("(")
        tok = lx.expect("INT")
        d = int(tok[1])
        if d < 1:
            raise ParseError("Phi needs a positive order", tok[2])
        lx.expect(")")
    else:
        raise ParseError(f"expected 1, -1 or Phi(d), found {value or 'end of input'!r}", pos)
    count = 1
    if lx.peek()[0] == "*":
        lx.next()
        tok = lx.expect("INT")
        count = int(tok[1])
        if count < 1:
            raise ParseError("count must be positive", tok[2])
    counts[d] = counts.get(d, 0) + count


def parse_multiset(text: str) -> CyclotomicMultiset:
    """Parse a bracketed eigenvalue multiset like ``[1*4, -1*8, Phi(11)]``."""
    lx = _Lexer(text)
    m = _parse_multiset_items(lx)
    tok = lx.peek()
    if tok[0] != "END":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return m


def parse_pattern(text: str) -> IsometryPattern:
    """Parse a full pattern literal ``S: [...]; T: [...]``."""
    lx = _Lexer(text)
    tok = lx.expect("NAME")
    if tok[1] != "S":
        raise ParseError("pattern must start with 'S'", tok[2])
    lx.expect(":")
    algebraic = _parse_multiset_items(lx)
    lx.expect(";")
    tok = lx.expect("NAME")
    if tok[1] != "T":
        raise ParseError("second part must be 'T'", tok[2])
    lx.expect(":")
    transcendental = _parse_multiset_items(lx)
    tok = lx.peek()
    if tok[0] != "END":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return IsometryPattern(algebraic, transcendental)
