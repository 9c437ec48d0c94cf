"""Exception hierarchy.

Everything derived from :class:`InputError` is a caller mistake (CLI exit
code 2); :class:`NumericalError` signals that a computation could not be
carried out to the required accuracy (CLI exit code 3).
"""


__all__ = [
    "PhasEntropyError", "InputError", "InvalidDimensionError", "InvalidBasisError",
    "InvalidStateError", "InvalidEnsembleError", "DegenerateEnsembleError",
    "DimensionMismatchError", "DomainError", "InvalidSpectrumError",
    "UnsupportedEnsembleError", "ResourceLimitError", "NumericalError",
]


class PhasEntropyError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PhasEntropyError, ValueError):
    pass


class InvalidDimensionError(InputError):
    pass


class InvalidBasisError(InputError):
    pass


class InvalidStateError(InputError):
    pass


class InvalidEnsembleError(InputError):
    pass


class DegenerateEnsembleError(InputError):
    """Operation needs more member states than the ensemble has."""


class DimensionMismatchError(InputError):
    pass


class DomainError(InputError):
    """Argument outside the range where a closed form is defined."""


class InvalidSpectrumError(InputError):
    pass


class UnsupportedEnsembleError(InputError):
    pass


class ResourceLimitError(InputError):
    """Simulated register would exceed the configured size cap."""


class NumericalError(PhasEntropyError, ArithmeticError):
    pass
