"""
Exception DomainError.
"""


class DomainError(ValueError):
    """
    Exception raises when an argument lies outside its admissible range.
    """
