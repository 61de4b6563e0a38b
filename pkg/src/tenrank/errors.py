"""Exception types raised by tenrank."""


class TenrankError(Exception):
    """Base class for every error raised by this package."""


class IndexRangeError(TenrankError, IndexError):
    def __init__(self, mode, index, size):
        super().__init__(
            f"index {index} out of range for mode {mode} of size {size}"
        )
        self.mode = mode
        self.index = index
        self.size = size


class InvalidSplitError(TenrankError, ValueError):
    """A split point or mode bipartition that does not exist for the tensor."""


class ArityError(TenrankError, ValueError):
    """A permutation or index whose length does not match the tensor order."""


class ShapeError(TenrankError, ValueError):
    """Operands with incompatible shapes."""


class SizeGuardError(TenrankError, ValueError):
    """Problem too large for the requested exhaustive strategy."""


class ParameterError(TenrankError, ValueError):
    pass


class NumericalError(TenrankError, ArithmeticError):
    def __init__(self, message, shape=None):
        if shape is not None:
            message = f"{message} (matrix shape {shape[0]}x{shape[1]})"
        super().__init__(message)
        self.shape = shape


class TensorFormatError(TenrankError, ValueError):
    """Malformed tensor file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TensorParseError(TensorFormatError):
    """A token in a tensor file that is not a number."""


class TensorLengthError(TensorFormatError):
    def __init__(self, expected, actual):
        super().__init__(f"expected {expected} values, found {actual}")
        self.expected = expected
        self.actual = actual
