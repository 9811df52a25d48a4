"""
Enumerator with the kinds of curve sweeps emitted by the command line.
"""

from enum import Enum


class SweepKind(Enum):
    RDC = 'rdc'
    DRC = 'drc'
    DC = 'dc'
    UNIVERSAL_LB = 'universal-lb'
    UNIVERSAL_UB = 'universal-ub'
