"""Exception types shared across the package."""


class NetbrainError(Exception):
    """Base class for all netbrain errors."""


class ConstructionError(NetbrainError, ValueError):
    """Raised when a graph cannot be built from the given data."""


class ParameterError(NetbrainError, ValueError):
    """Raised when a generator parameter is out of its valid range."""


class ConfigError(NetbrainError, ValueError):
    """Raised for invalid experiment configurations or config files."""


class ParseError(NetbrainError, ValueError):
    """Raised when an input file cannot be parsed."""


class AggregationError(NetbrainError, ValueError):
    """Raised when curves with incompatible threshold grids are aggregated."""


class DiscoveryStallError(NetbrainError, RuntimeError):
    """Raised when a discovery run stops making progress (misuse guard)."""
