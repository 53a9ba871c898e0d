"""Exception types shared by every module."""


class LimError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWidth(LimError):
    """A bit vector or line set has zero or negative width."""


class IndexOutOfRange(LimError):
    """A row, column, or bit position is outside the valid range."""


class WidthMismatch(LimError):
    """An operand's width does not match the array width."""


class UnsupportedOperation(LimError):
    """The requested operation is not defined for this cell variant."""


class EmptySet(LimError):
    """A candidate set that must be non-empty is empty."""


class UncalibratedPoint(LimError):
    """No calibration entry exists for this (memory, operation, size)."""


class NonPositiveEdp(LimError):
    """Energy-delay products must be strictly positive."""


class GeometryNotBlockAligned(LimError):
    """Netlist generation requires rows and cols to be multiples of 32."""


class MissingPrimitive(LimError):
    """The primitive library lacks a subcircuit needed by this model."""


class ConfigError(LimError):
    """A run configuration file is malformed or contains unknown keys."""
