"""Exception types shared across the package."""


class WronskiError(Exception):
    """Base class for all library errors."""


# -- posets ------------------------------------------------------------

class CycleDetected(WronskiError):
    """The cover relation contains a directed cycle."""


class RedundantCover(WronskiError):
    """A cover pair is implied by transitivity of the other covers."""


class UnknownLabel(WronskiError):
    """A cover references an element that is not in the poset."""


class EnumerationCapExceeded(WronskiError):
    """Linear-extension enumeration exceeded the configured cap."""


# -- polytopes ---------------------------------------------------------

class PointOutsidePolytope(WronskiError):
    """A point violates one of the polytope's facet inequalities."""


class DegenerateSimplex(WronskiError):
    """A simplex has affinely dependent vertices."""


class NotBalanced(WronskiError):
    """The dual graph is not bipartite / no folding exists.

    Carries a witness: either an odd cycle of simplex indices or a
    coloring conflict description.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotFullDimensional(WronskiError):
    """The polytope does not span the ambient space."""


# -- wronski systems ---------------------------------------------------

class MissingFolding(WronskiError):
    """The triangulation carries no folding (vertex coloring)."""


class DimensionMismatch(WronskiError):
    """Coefficient matrix shape does not match the polytope dimension."""


# -- exact polynomial algebra ------------------------------------------

class ZeroPolynomial(WronskiError):
    """Operation undefined for the zero polynomial."""


class NotSquarefree(WronskiError):
    """gcd(p, p') is nonconstant."""


# -- solver ------------------------------------------------------------

class NotSeparating(WronskiError):
    """The linear form failed to separate the solutions; retry upstream."""


class DimensionUnsupported(WronskiError):
    """The solver handles at most 3 variables."""


# Harness-facing alias for the same condition.
UnsupportedDimension = DimensionUnsupported


class NonGenericSystem(WronskiError):
    """The system does not have the generic number of torus solutions."""


class UndecidedAtScale(WronskiError):
    """Center-avoidance could not be decided by desk-scale elimination."""


# -- factorizations ----------------------------------------------------

class LengthMismatch(WronskiError):
    """Coefficient list length does not match the degree sum."""


class ParityMismatch(WronskiError):
    """Root counts r, c violate r + 2c = sum of degrees."""


class ScaleExceeded(WronskiError):
    """Brute-force enumeration guard tripped."""


class NonGenericTarget(WronskiError):
    """Target polynomial is degenerate (wrong degree or repeated roots)."""
