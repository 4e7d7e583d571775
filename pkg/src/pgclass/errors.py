"""Exception types shared across the package."""


class PgclassError(Exception):
    """Base class for all pgclass errors."""


class ParseError(PgclassError, ValueError):
    """Presentation file does not conform to the grammar."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if col is not None:
                loc += f", col {col}"
            loc += ": "
        super().__init__(loc + message)


class InternalInconsistencyError(PgclassError):
    """Two independent routes to the same predicate disagreed.

    This always indicates a bug, never a property of the input group; it
    maps to process exit code 2 in the CLI.
    """


class TableVerificationError(InternalInconsistencyError):
    """A computed character table failed one of its exact self-checks."""
