"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: input problems exit 1,
timeouts 2, resource refusals 3, internal invariant violations 4.
"""

from __future__ import annotations


class InputError(ValueError):
    """Invalid user-supplied data or parameters."""


class ParseError(InputError):
    """Malformed input file; remembers the offending line when known."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None) -> None:
        location = ""
        if path is not None:
            location = str(path)
        if line is not None:
            location = f"{location}:{line}" if location else f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)
        self.path = path
        self.line = line


class ConstraintViolation(InputError):
    """An order-variable assignment breaks antisymmetry or transitivity."""


class ResourceLimitError(RuntimeError):
    """A requested search would exceed the configured memory cap."""


class InternalInvariantError(RuntimeError):
    """The solver detected a broken internal invariant (a bug, not bad input)."""
