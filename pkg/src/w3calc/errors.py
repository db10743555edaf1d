"""Exception types shared across the package."""


class W3Error(Exception):
    """Base class for errors raised by w3calc."""


class StructuralError(W3Error, ValueError):
    """Malformed input: mismatched variables, bad indices, non-monomial images."""


class DomainError(W3Error, ValueError):
    """Input outside the mathematical domain of an operation (e.g. k < 3)."""


class LedgerError(W3Error, ValueError):
    """A crossing ledger file is unreadable or violates the schema."""
