"""
Exception GridConfigurationError.
"""


class GridConfigurationError(ValueError):
    """
    Exception raises when an oracle grid is too coarse or the problem is too large for exhaustive search.
    """
