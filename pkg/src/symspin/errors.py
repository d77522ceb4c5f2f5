"""Exception types shared across the package."""

__all__ = [
    "DomainError",
    "DataError",
    "UndefinedSqueezingError",
    "SearchError",
]


class DomainError(ValueError):
    """An argument lies outside the operation's domain (bad index, size, range)."""


class DataError(ValueError):
    """Numerical content violates a contract (non-Hermitian, non-normalized, ...)."""


class UndefinedSqueezingError(DataError):
    """The squeezing parameter is undefined because the mean spin vanishes."""


class SearchError(RuntimeError):
    """A numerical search failed, e.g. no bracketing minimum was found."""
