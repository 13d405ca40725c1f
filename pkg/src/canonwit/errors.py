"""Exception hierarchy shared by every module.

Callers distinguish three failure modes: the input is wrong
(:class:`MalformedInputError`), a configured search ceiling was hit
(:class:`ResourceLimitError`), or the input is valid but too small for an
extraction step to run (:class:`InsufficientInputError`).
"""

from __future__ import annotations


class CanonwitError(Exception):
    """Base class for all package errors."""


class MalformedInputError(CanonwitError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(CanonwitError):
    """A configured ceiling or budget was exceeded; the answer is unknown."""


class BoundOverflow(ResourceLimitError):
    """An exact bound is too large to materialise.

    ``log2_lower`` is a certified lower bound: the true value is at least
    ``2 ** log2_lower``.
    """

    def __init__(self, what: str, log2_lower: int, max_bits: int):
        self.what = what
        self.log2_lower = log2_lower
        self.max_bits = max_bits
        super().__init__(
            f"{what} exceeds the {max_bits}-bit evaluation budget "
            f"(value >= 2^{log2_lower})"
        )


class InsufficientInputError(CanonwitError):
    """The structure is valid but too small for any branch of an extractor."""
