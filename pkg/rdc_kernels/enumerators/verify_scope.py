"""
Enumerator with the scopes of the verification suite.
"""

from enum import Enum


class VerifyScope(Enum):
    ALL = 'all'
    ONESHOT = 'oneshot'
    DC = 'dc'
    UNIVERSAL = 'universal'
