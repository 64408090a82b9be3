"""Exception types shared across the package."""


class K3AutoError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(K3AutoError):
    """Arithmetic attempted between elements of different field contexts."""


class ZeroPolynomialError(K3AutoError):
    """An operation that needs a nonzero (or nonconstant) polynomial got one."""


class InvalidPlaceError(K3AutoError):
    """A finite place needs a monic squarefree generator of degree >= 1."""


class LatticeError(K3AutoError):
    """Malformed Gram matrix or unusable lattice input."""


class LatticeExprError(K3AutoError):
    """Unparseable lattice expression."""


class InvalidModelError(K3AutoError):
    """Weierstrass data with identically vanishing discriminant."""


class InconsistentValuationsError(K3AutoError):
    """A valuation triple that matches no row of the fiber-type table."""


class PatternError(K3AutoError):
    """Malformed eigenvalue pattern (wrong rank, bad block, ...)."""


class ParseError(K3AutoError):
    """Text input rejected by one of the small expression grammars."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
