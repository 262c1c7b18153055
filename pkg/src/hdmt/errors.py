"""Exception taxonomy shared by every module."""


class HdmtError(Exception):
    """Base class for all toolkit errors."""


class ShapeError(HdmtError):
    """Array dimensions do not match the operation's contract."""


class NumericError(HdmtError):
    """A NaN/Inf appeared where only finite values are allowed."""


class DomainError(HdmtError):
    """An input value is outside the mathematical domain of the operation."""


class ConfigError(HdmtError):
    """Invalid, unknown, or missing configuration."""


class IntegrityError(HdmtError):
    """A persisted artifact is corrupt or from an unsupported format version."""


class SchemaError(HdmtError):
    """A metrics row does not match the established header."""
