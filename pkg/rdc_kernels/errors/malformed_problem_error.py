"""
Exception MalformedProblemError.
"""


class MalformedProblemError(ValueError):
    """
    Exception raises when a linear program has inconsistent dimensions or bounds.
    """
