"""Exception types shared across the toolkit."""


class LexsynthError(Exception):
    """Base class for all toolkit errors."""


class DataFormatError(LexsynthError):
    """A file does not conform to its declared format (CLI exit code 2)."""

    def __init__(self, message: str, path=None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{path}: "
        if line is not None:
            loc = f"{loc}line {line}: "
        super().__init__(f"{loc}{message}")
        self.path = path
        self.line = line


class ValidationError(LexsynthError):
    """Inputs are well-formed but violate an operation's contract (exit code 3)."""
