"""Exception types shared across the library."""


class NomkitError(Exception):
    """Base class for all nomkit errors."""


class ParseError(NomkitError):
    """Raised on malformed textual input, with a source position."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class SortError(NomkitError):
    """An ill-sorted term, swap, or abstraction."""


class UnrepresentableError(NomkitError):
    """A value falls outside the finitely representable fragment."""


class UndecidableError(NomkitError):
    """A test the library refuses to decide (conservative)."""


class NotFreshError(NomkitError):
    """A list or atom fails a required freshness condition."""


class RegimeError(NomkitError):
    """A model element violates its declared support regime."""


class FamilyCapError(NomkitError):
    """A generated valuation or value family exceeded its size cap."""


class QuantBasisError(NomkitError):
    """A quantified sort has no quantification basis."""
