"""
Enumerator with the step size rules of the conditional-gradient solver.
"""

from enum import Enum


class StepRule(Enum):
    OPEN_LOOP = 'open-loop'
    LINE_SEARCH = 'line-search'
