"""Exception hierarchy shared by every kernel module.

All domain failures derive from KernelError so callers (the CLI in
particular) can map them to exit codes in one place.  ParseError carries
source coordinates for diagnostics.
"""


class KernelError(Exception):
    """Base class for every error raised by this package."""


class UnknownVariable(KernelError):
    pass


class DuplicateVariable(KernelError):
    pass


class TooManyOddVariables(KernelError):
    """More than 64 odd variables; the odd part of a monomial is a machine-word bitmask."""


class MixedTables(KernelError):
    """Operands declared over different variable tables."""


class DimensionMismatch(KernelError):
    pass


class IndexOutOfRange(KernelError):
    pass


class MixedParityGenerator(KernelError):
    """An ideal generator that is neither parity-even nor parity-odd."""


class ParityViolation(KernelError):
    """A parity-homogeneity constraint was broken (matrix block layout, substitution image)."""


class PointNotOnVariety(KernelError):
    pass


class MissingPoint(KernelError):
    """A command needed a closed point but the source file declares none."""


class OrderTooSmall(KernelError):
    pass


class NotInvertible(KernelError):
    pass


class UndecidableUnits(KernelError):
    """Unit test requested over a ring where invertibility is not implemented."""


class BadDims(KernelError):
    pass


class BadForm(KernelError):
    """Bilinear form is not invertible or does not match the requested flavor."""


class ParseError(KernelError):
    """Source text rejected; carries 1-based line/column plus what was expected."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)
