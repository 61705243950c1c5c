"""Exception types shared across the package."""


class NonSquareError(ValueError):
    """Operation requires a square matrix."""


class NotHermitianError(ValueError):
    """Matrix deviates from Hermitian beyond tolerance."""


class DimMismatchError(ValueError):
    """Operand dimensions are incompatible."""


class RangeError(ValueError):
    """Scalar parameter lies outside its admissible range."""


class SimplexError(ValueError):
    """Weight vector is not a valid probability distribution."""


class InvalidStateError(ValueError):
    """Matrix is not a valid density operator."""


class NotUnitaryError(ValueError):
    """Matrix deviates from unitary beyond tolerance."""


class DimTooLargeError(ValueError):
    """Problem dimension exceeds the supported size."""


class KrausError(ValueError):
    """Kraus operator list is malformed or not trace preserving."""


class NoConvergenceError(RuntimeError):
    """Iterative solver hit its iteration cap before reaching tolerance."""


class SpecParseError(ValueError):
    """Channel-spec document could not be parsed."""
