"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so new error types should
subclass one of the four below rather than Exception directly.
"""


class ConndelError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ConndelError):
    """The caller passed arguments outside an operation's domain."""


class ContractionError(InvalidInputError):
    """An arc scheduled for contraction no longer exists at its turn."""


class ParseError(ConndelError):
    """A text-format instance file is malformed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BudgetExceededError(ConndelError):
    """A brute-force component refused an input larger than its budget."""


class InternalInconsistencyError(ConndelError):
    """A guaranteed structural invariant failed; always a bug."""
