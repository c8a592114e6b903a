"""Exception hierarchy shared by all remezkit modules."""


class RemezkitError(Exception):
    """Base class for every error raised by this package."""


class InputError(RemezkitError, ValueError):
    """Invalid argument or configuration; the message names the offending field."""


class DescriptorError(InputError):
    """A sampling-set descriptor violates its invariants or cannot be parsed."""


class UnsupportedDescriptorError(InputError):
    """The requested operation is not defined for this descriptor variant."""


class UnsupportedDimensionError(InputError):
    """Dimension outside the built-in range and no user coefficients supplied."""


class NumericalError(RemezkitError, RuntimeError):
    """Internal numerical failure (CLI exit code 2)."""


class LpFailureError(NumericalError):
    """The simplex solver failed to converge; carries the basis for diagnosis."""

    def __init__(self, message: str, basis=None):
        super().__init__(message)
        self.basis = None if basis is None else list(basis)
