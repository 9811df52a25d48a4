"""
Exception ConvergenceError.
"""

from typing import Optional

import numpy as np


class ConvergenceError(RuntimeError):
    """
    Exception raises when an iterative solver exhausts its budget without certifying its result.

    Attributes
    ----------
    best_iterate : np.ndarray, optional
        Best point found before giving up.
    gap : float
        Duality gap certified at the best iterate.
    """

    def __init__(self, message: str, best_iterate: Optional[np.ndarray], gap: float) -> None:
        super().__init__(message)
        self.best_iterate = best_iterate
        self.gap = gap
