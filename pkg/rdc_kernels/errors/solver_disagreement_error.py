"""
Exception SolverDisagreementError.
"""


class SolverDisagreementError(RuntimeError):
    """
    Exception raises when two exact solvers report different optima for the same problem.
    """
