"""Exception hierarchy.

Every failure mode of the engine is a hard, typed error.  Nothing is ever
silently truncated or guessed: if a valuation or leading coefficient cannot
be certified at the working precision the operation raises.
"""


class AdelChernError(Exception):
    """Base class for all library errors."""


class InsufficientPrecision(AdelChernError):
    """A coefficient, valuation or pivot cannot be certified at the
    current precision."""


class DivisionByZero(AdelChernError, ZeroDivisionError):
    """Inversion of zero (or of a non-unit where a unit is required)."""


class ZeroElement(AdelChernError):
    """A nonzero element was required (e.g. valuation of 0)."""


class NotIntegral(AdelChernError):
    """Residue requested for an element with a pole along the curve."""


class BranchMismatch(AdelChernError):
    """Branch lists of two local elements do not line up."""


class OverlapError(AdelChernError):
    """Place sets expected to be disjoint overlap."""


class ExpansionFailure(AdelChernError):
    """A rational function could not be expanded at a place."""


class WrongProvenance(AdelChernError):
    """A matrix does not carry the subring provenance a splitting needs."""


class CocycleViolation(AdelChernError):
    """A transition-matrix triple fails the cocycle identity."""


class OracleUnavailable(AdelChernError):
    """A curve lacks the global-section data a splitting needs."""


class UnmodeledCurve(AdelChernError):
    """A divisor mentions a curve the surface model does not know."""


class IncompatibleReferences(AdelChernError):
    """Torsor offsets measured against different references."""


class NonInvertible(AdelChernError):
    """A matrix is not invertible over the local field."""


class NotBlockTriangular(AdelChernError):
    """A matrix is not block upper-triangular as required."""


class ValidationError(AdelChernError):
    """A surface document or model failed symbolic validation."""
