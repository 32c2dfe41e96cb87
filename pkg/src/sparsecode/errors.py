"""Exception types shared across the package."""


class SparseCodeError(Exception):
    """Base class for all package errors."""


class DimensionError(SparseCodeError):
    """Operand shapes do not line up."""


class InvalidPartitionError(SparseCodeError):
    """Requested block count is out of range for the matrix."""


class UnsupportedRegimeError(SparseCodeError):
    """Parameter combination outside the supported straggler regime (s > k)."""


class InfeasibleSplitError(SparseCodeError):
    """No feasible (omega_a, omega_b) weight split exists."""


class DecodeFailureError(SparseCodeError):
    """The decoding system for a worker subset is singular."""

    def __init__(self, subset, message=None):
        self.subset = tuple(subset)
        super().__init__(message or f"decoding system singular for subset {self.subset}")


class ProfileError(SparseCodeError):
    """Invalid heterogeneous device profile."""


class CapExceededError(SparseCodeError):
    """Exhaustive enumeration would exceed the configured subset cap."""


class MatrixMarketError(SparseCodeError):
    """Malformed Matrix Market input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
