"""Exception types shared across the package."""


class SarcnetError(Exception):
    """Base class for all package-specific errors."""


class DataError(SarcnetError):
    """A data file or data pool is missing, malformed, or insufficient."""


class TrainingDivergence(SarcnetError):
    """Training produced a non-finite loss or gradient."""
