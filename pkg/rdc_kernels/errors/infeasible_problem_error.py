"""
Exception InfeasibleProblemError.
"""

from typing import Any, Mapping, Optional


class InfeasibleProblemError(Exception):
    """
    Exception raises when a problem has an empty feasible set.

    Attributes
    ----------
    certificate : float, optional
        Minimal total constraint violation found by the solver, when available.
    details : dict
        Extra quantities describing the infeasibility.
    """

    def __init__(self, message: str, certificate: Optional[float] = None,
                 details: Optional[Mapping[str, Any]] = None) -> None:
        super().__init__(message)
        self.certificate = certificate
        self.details = dict(details or {})
