"""
Exception LinearSubproblemError.
"""

from ..enumerators import SolveStatus


class LinearSubproblemError(RuntimeError):
    """
    Exception raises when a linear subproblem of an iterative solver ends without an optimal vertex.

    Attributes
    ----------
    status : SolveStatus
        Status reported by the simplex for the subproblem.
    """

    def __init__(self, message: str, status: SolveStatus) -> None:
        super().__init__(message)
        self.status = status
