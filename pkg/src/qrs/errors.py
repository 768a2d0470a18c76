"""Exception types raised across the package."""


class QrsError(Exception):
    """Base class for all package errors."""


class UnsupportedDegreeError(QrsError, ValueError):
    """Extension degree outside the supported range 2..8."""


class ContextMismatchError(QrsError, ValueError):
    """Operands belong to different fields (or a field and F_2)."""


class NotABasisError(QrsError, ValueError):
    """Element list is linearly dependent over F_2."""


class DimensionError(QrsError, ValueError):
    """Vector or matrix has the wrong shape."""


class ParameterError(QrsError, ValueError):
    """Code parameters violate a construction's admissible range."""


class NotInvertibleError(QrsError, ValueError):
    """Matrix is singular over its field."""


class ContainmentError(QrsError, ValueError):
    """Codes are not nested in the required order."""


class NotSelfOrthogonalError(QrsError, ValueError):
    """Binary code is not weakly self-dual."""


class DistanceBudgetError(QrsError):
    """Exhaustive enumeration would exceed the codeword budget."""


class CapabilityError(QrsError, ValueError):
    """Requested correction radius exceeds what the code guarantees."""


class UncorrectableError(QrsError):
    """Syndrome was detected but has no entry in the decoder table."""

    def __init__(self, s_x, s_z):
        super().__init__(f"syndrome ({_bits(s_x)}, {_bits(s_z)}) detected but not correctable")
        self.s_x = s_x
        self.s_z = s_z


class UnsupportedCodeError(QrsError, ValueError):
    """Code lacks the spectral layout needed to build its circuits."""


class CircuitError(QrsError, ValueError):
    """Malformed circuit or gate."""


class CircuitParseError(CircuitError):
    """Syntax error in a circuit text file."""

    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


def _bits(v) -> str:
    return "".join(str(int(b)) for b in v)
