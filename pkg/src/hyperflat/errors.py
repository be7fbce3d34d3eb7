"""Exception hierarchy shared by every layer of the package."""


class HyperflatError(Exception):
    """Base class for all errors raised by hyperflat."""


class ContractViolation(HyperflatError, ValueError):
    """An operation was called outside its documented preconditions."""


class CurveValidationError(ContractViolation):
    """The curve data does not describe a supported hyperelliptic model."""


class LiteralError(HyperflatError, ValueError):
    """A textual literal could not be parsed.

    ``column`` is 1-based; ``line`` is filled in by callers that read files.
    """

    def __init__(self, message, column=None, line=None):
        self.message = message
        self.column = column
        self.line = line
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message

    def at_line(self, line):
        return LiteralError(self.message, self.column, line)


class NoNonzeroClass(HyperflatError):
    """H^1 of the requested line bundle vanishes, so no nonzero class exists."""


class SearchExhausted(HyperflatError):
    """A bounded search ran out of candidates."""


class NoValidSplit(HyperflatError):
    """An effective divisor cannot be split into parts of the requested degrees."""
