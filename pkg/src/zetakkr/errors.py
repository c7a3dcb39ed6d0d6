"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: input/precondition
problems are usage errors, convergence and conditioning problems are
numerical errors, and catalog/file problems are I/O errors.
"""

__all__ = [
    "ZetaKKRError",
    "DomainError",
    "PoleError",
    "AccuracyRegimeError",
    "NonFiniteError",
    "ConvergenceError",
    "IllConditionedFitError",
    "PoleProximityError",
    "BandEdgeError",
    "RootMissError",
    "CatalogError",
    "CatalogFormatError",
    "CatalogOrderError",
    "CatalogCoverageError",
]


class ZetaKKRError(Exception):
    """Base class for package errors."""


class DomainError(ZetaKKRError, ValueError):
    """Input outside an operation's stated domain."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class AccuracyRegimeError(DomainError):
    """Input beyond the range where the accuracy model is validated."""


class NonFiniteError(ZetaKKRError, ArithmeticError):
    """A NaN or infinity appeared where a finite value is guaranteed."""


class ConvergenceError(ZetaKKRError, RuntimeError):
    """An iterative method failed to reach its tolerance."""


class IllConditionedFitError(ConvergenceError):
    """Least-squares basis too ill-conditioned to trust."""


class PoleProximityError(ZetaKKRError, ValueError):
    """Evaluation requested too close to a determinant pole."""


class BandEdgeError(ZetaKKRError, ValueError):
    """Energy too close to a band edge for the requested quantity."""


class RootMissError(ConvergenceError):
    """A required root could not be bracketed."""

    def __init__(self, message, k=None, band_index=None):
        super().__init__(message)
        self.k = k
        self.band_index = band_index


class CatalogError(ZetaKKRError):
    """Base class for zero-catalog problems."""


class CatalogFormatError(CatalogError, ValueError):
    """Unparseable catalog content; carries the offending line number."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class CatalogOrderError(CatalogFormatError):
    """Catalog heights not strictly increasing."""


class CatalogCoverageError(CatalogError, ValueError):
    """Query beyond the height range the catalog covers."""
