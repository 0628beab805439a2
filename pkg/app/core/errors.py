from __future__ import annotations


class PartitionError(ValueError):
    """Base class for every domain error raised by the core modules."""


class OracleBoundExceeded(PartitionError):
    pass


class OutOfDomain(PartitionError):
    pass


class InvalidPoint(PartitionError):
    pass


class Breakpoint(PartitionError):
    pass


class DepthExceeded(PartitionError):
    pass


class NonPositiveRatio(PartitionError):
    pass


class SupportViolation(PartitionError):
    """Both shifted entries of a count row became nonzero."""
