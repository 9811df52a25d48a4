"""
Enumerator with the two universality bound problems.
"""

from enum import Enum


class RateBound(Enum):
    LOWER = 'lb'
    UPPER = 'ub'
