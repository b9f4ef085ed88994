"""Exception hierarchy shared by every module."""


class SumProdError(Exception):
    """Base class for all errors raised by sumprodlab."""


class InputError(SumProdError, ValueError):
    """Malformed or out-of-domain input (empty set, zero denominator, u = 0, ...)."""


class ResourceCapError(SumProdError):
    """A set construction would exceed the configured cardinality cap."""


class CertificationError(SumProdError, AssertionError):
    """A constant-1 inequality failed. This always indicates a bug, never a math event."""

    def __init__(self, message, records=None):
        super().__init__(message)
        self.records = records or []
