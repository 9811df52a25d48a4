"""
Enumerator with the possible outcomes of a solver run.
"""

from enum import Enum


class SolveStatus(Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'
    ITERATION_LIMIT = 'iteration-limit'
