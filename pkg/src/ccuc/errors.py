"""
Exception types shared across the toolkit.
"""


class CcucError(Exception):
    """Base class for all toolkit errors."""


class DataError(CcucError, ValueError):
    """Malformed instance, scenario, config or report data."""


class SolverError(CcucError, RuntimeError):
    """A MILP backend is unavailable or failed to produce a usable answer."""
