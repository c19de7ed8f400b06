"""Exception types raised across the package."""


class OctorepError(Exception):
    """Base class for package errors."""


class DimensionError(OctorepError, ValueError):
    """Operand shapes are incompatible with the requested operation."""


class NotSymmetricError(OctorepError, ValueError):
    pass


class DegenerateInputError(OctorepError, ValueError):
    """Input lies in a degenerate set excluded by the operation (e.g. a real octonion)."""


class NotCompletelyInvertibleError(OctorepError, ValueError):
    pass


class NotHermitianError(OctorepError, ValueError):
    pass


class UnsupportedSizeError(OctorepError, ValueError):
    pass
