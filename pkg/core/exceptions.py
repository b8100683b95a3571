"""
Hamuni error hierarchy.

Every error raised by the library derives from HamuniError and from the
builtin exception a caller would naturally catch.
"""


class HamuniError(Exception):
    """Base class for all hamuni errors."""


class NotHermitianError(HamuniError, ValueError):
    """Input matrix deviates from Hermitian beyond herm_tol."""


class DimensionMismatchError(HamuniError, ValueError):
    """Operands have incompatible shapes."""


class NonNormalError(HamuniError, ValueError):
    """Operation requires a normal matrix."""


class ConvergenceError(HamuniError, RuntimeError):
    """Iterative routine hit its iteration cap."""


class PreconditionError(HamuniError, ValueError):
    """Inputs violate the documented precondition of an operation."""


class UnsupportedQubitCountError(HamuniError, ValueError):
    """Only two- and three-qubit registers are supported."""


class UnknownGeneratorError(HamuniError, KeyError):
    """Gate sequence refers to a generator id that was not supplied."""


class InvalidDurationError(HamuniError, ValueError):
    """Gate sequence step with non-positive duration."""


class UnknownFamilyError(HamuniError, ValueError):
    """Sampler asked for a family it does not know."""


class DocumentError(HamuniError, ValueError):
    """Malformed Hamiltonian document.

    Args:
        message: Human readable diagnostic
        field: Offending JSON field, if known
        line: 1-based line number in the source file, if known
    """

    def __init__(self, message: str, field: str = None, line: int = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")
