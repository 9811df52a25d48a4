"""
Exception ChannelValidationError.
"""


class ChannelValidationError(ValueError):
    """
    Exception raises when a representation channel is malformed. The message names the offending field.
    """
