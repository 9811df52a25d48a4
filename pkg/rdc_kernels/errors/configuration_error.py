"""
Exception ConfigurationError.
"""


class ConfigurationError(ValueError):
    """
    Exception raises when a configuration file or a command option holds an unknown key or a bad value.
    """
