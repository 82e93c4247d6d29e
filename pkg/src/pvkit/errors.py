"""Exception hierarchy shared by all pvkit modules."""


class PvkitError(Exception):
    """Base class for every error raised by pvkit."""

    exit_code = 2


class DomainError(PvkitError):
    """A mathematically meaningful refusal (unsupported input, failed hypothesis)."""


class UnsupportedError(DomainError):
    """The input lies outside the class of objects pvkit can certify."""


class UsageError(PvkitError):
    """Malformed input: syntax errors, unknown names, arity mismatches."""

    exit_code = 1


class ParseError(UsageError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)
