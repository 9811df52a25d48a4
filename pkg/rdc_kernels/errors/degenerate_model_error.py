"""
Exception DegenerateModelError.
"""


class DegenerateModelError(ValueError):
    """
    Exception raises when the task coupling q_S1 equals 1/2, which makes the task independent of the source.
    """
