"""Exception hierarchy.

The CLI maps :class:`InputError` to exit code 3 and every other
:class:`PosgeomError` to exit code 4.
"""


class PosgeomError(Exception):
    """Base class for all library errors."""


class InputError(PosgeomError, ValueError):
    """Malformed or invalid input (files, graphs, expressions)."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += str(source)
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class VariableMismatchError(PosgeomError, ValueError):
    """Operands live over different variable tables."""


class DegenerateConeError(PosgeomError, ArithmeticError):
    pass


class ChartError(PosgeomError, ArithmeticError):
    pass


class InfiniteRankError(PosgeomError, ArithmeticError):
    pass


class RankDeficientError(PosgeomError, ArithmeticError):
    pass


class NotPositiveError(PosgeomError, ArithmeticError):
    pass


class DimensionMismatchError(PosgeomError, ValueError):
    pass


class DegenerateArrangementError(PosgeomError, ValueError):
    pass
