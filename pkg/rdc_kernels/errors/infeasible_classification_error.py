"""
Exception InfeasibleClassificationError.
"""

from .infeasible_problem_error import InfeasibleProblemError


class InfeasibleClassificationError(InfeasibleProblemError):
    """
    Exception raises when the classification budget is below the feasibility threshold H_b(q_S1).

    Attributes
    ----------
    threshold : float
        The smallest admissible classification budget.
    """

    def __init__(self, message: str, threshold: float) -> None:
        super().__init__(message, certificate=threshold, details={'threshold': threshold})
        self.threshold = threshold
