"""Exceptions raised by the equilateral set toolkit."""
from typing import List, Optional


class EquilateralError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatchError(EquilateralError):
    """A vector does not match the dimension of its space."""


class NonFiniteError(EquilateralError):
    """A vector holds NaN or infinite coordinates."""


class InvalidSpaceError(EquilateralError):
    """A space description has an invalid exponent, dimension or layout."""


class DegenerateSetError(EquilateralError):
    """Two points of a supposedly equilateral set coincide."""


class NotEquilateralError(EquilateralError):
    """The pairwise distances of a point set are not all equal."""

    def __init__(self, message: str, lam: float, max_deviation: float):
        super().__init__(message)
        self.lam = lam
        self.max_deviation = max_deviation


class NoSignChangeError(EquilateralError):
    """A bracketing root finder was given an interval without a sign change."""


class ParameterRangeError(EquilateralError):
    """An exponent, dimension or parameter lies outside its admissible range."""


class HadamardError(EquilateralError):
    """A Hadamard matrix cannot be built or fails verification."""


class InfeasibleParametersError(EquilateralError):
    """The parameter system of the two-simplex construction has no solution."""

    def __init__(self, message: str, failed: Optional[List[str]] = None):
        super().__init__(message)
        self.failed = failed or []


class OracleBoundError(EquilateralError):
    """A norm oracle violates or exceeds its claimed sandwich bound."""


class FixedPointNonConvergence(EquilateralError):
    """The fixed-point solver ran out of budget without meeting its tolerance."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class CoverHypothesisError(EquilateralError):
    """A bipartition cover is not disjoint, has an empty piece, or misses a pair."""


class HintMismatchError(EquilateralError):
    """A maximality hint does not match the structure of the certificate."""


class InputFormatError(EquilateralError):
    """An input file is not valid JSON or lacks the expected fields."""
