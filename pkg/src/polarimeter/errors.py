"""Exception types shared across the package."""

from __future__ import annotations


class InputError(Exception):
    """Bad user-supplied input (file contents, flags). Maps to CLI exit code 1.

    Carries the offending path and 1-based line number when they are known so
    diagnostics can name the exact location.
    """

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}: " if line is None else f"{path}:{line}: "
        super().__init__(where + message)
