"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
data problems with 3, and anything else (treated as an internal invariant
violation) with 4.
"""


class ConfigError(ValueError):
    """Invalid run or encoding configuration."""


class DimensionMismatch(ValueError):
    """Operands disagree on vector length or matrix shape."""


class EmptyInput(ValueError):
    """An aggregation was called with nothing to aggregate."""


class ModeError(ConfigError):
    """Requested encoding mode is incompatible with the feature values."""


class MalformedInput(ValueError):
    """Structurally invalid in-memory input, e.g. edge endpoints out of range."""


class DataError(Exception):
    """Base class for problems with on-disk datasets and splits."""


class DatasetNotFound(DataError):
    """A required dataset file or directory does not exist."""


class CorruptDataset(DataError):
    """Dataset contents contradict their metadata or the expected layout."""


class CorruptSplit(DataError):
    """A split violates disjointness or index-range requirements."""


class InfeasibleSplit(DataError):
    """The requested split sizes cannot be drawn from the label histogram."""
