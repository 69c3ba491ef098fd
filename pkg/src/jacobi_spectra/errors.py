"""Exception hierarchy shared by the library and the command-line front end."""


class JacobiError(Exception):
    """Base class for all errors raised by jacobi_spectra."""


class InvalidModelError(JacobiError, ValueError):
    """Operator data violates positivity, finiteness or shape requirements."""


class NumericalError(JacobiError, RuntimeError):
    """A numerical procedure failed a self-consistency check."""


class SizeLimitError(JacobiError, ValueError):
    """Requested size exceeds a conditioning cap of a coefficient-based routine."""
