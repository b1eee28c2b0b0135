"""Exception types shared across the package."""


class PpmParseError(ValueError):
    """Raised when a byte stream is not a valid binary PPM (P6) image."""


class ModelFormatError(ValueError):
    """Raised when a model JSON document is missing fields, has wrong shapes,
    or contains non-finite values."""


class DatasetError(ValueError):
    """Raised for malformed sample CSV files."""


class ConfigError(ValueError):
    """Raised for invalid run configurations: bad training setups,
    unreachable view windows, out-of-range parameters."""
