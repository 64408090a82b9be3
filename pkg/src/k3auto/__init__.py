"""Exact-arithmetic replays of the computations classifying K3 surfaces
with an order-11 symmetry: polynomial valuations over small number
fields, Kodaira fiber classification, integer lattice invariants,
cyclotomic eigenvalue bookkeeping, and the finite case enumerations
stitched together by a verification suite.
"""

__version__ = "0.1.0"

__all__ = [
    "cli",
    "ellsurf",
    "enumerations",
    "errors",
    "isometry",
    "lattice",
    "parsing",
    "polyfield",
    "verify",
]
