"""
Dense two-phase tableau simplex for the small box-constrained linear programs of this library.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .linear_program import LinearProgram, SolveReport
from ..enumerators import SolveStatus

logger = logging.getLogger(__name__)


class DenseSimplex:
    """
    DenseSimplex solves min c.x s.t. a.x <= b, lower <= x <= upper.

    Variables are shifted to y = x - lower, the box tops become extra rows and every row gets a slack;
    rows with a negative right-hand side are negated and receive an artificial variable. Phase 1
    minimizes the sum of the artificials, phase 2 the original objective. Both phases use Bland's rule.

    Attributes
    ----------
    _lp : LinearProgram
        Problem being solved.
    _tableau : NDArray[np.float64]
        Constraint rows of the tableau with the right-hand side in the last column.
    _basis : List[int]
        Basic column of each tableau row.
    _artificial : NDArray[np.bool_]
        Mask of the artificial columns.
    _pivots : int
        Pivots performed so far, over both phases.

    Methods
    -------
    solve()
        Runs both phases and returns the SolveReport.
    _initialize_tableau()
        Builds the phase-1 tableau and its starting basis.
    _find_pivot_column()
        Entering column by Bland's rule.
    _find_pivot_row()
        Leaving row by the minimum ratio test with Bland's tie-break.
    _pivot()
        Gauss-Jordan pivot on one tableau entry.
    _run_phase()
        Pivots until optimality or unboundedness for a given cost vector.
    _transition_to_phase_two()
        Drives zero-valued artificials out of the basis, dropping redundant rows.
    """

    _PIVOT_TOLERANCE: float = 1e-12
    _REDUCED_COST_TOLERANCE: float = 1e-12
    _FEASIBILITY_TOLERANCE: float = 1e-9
    _MAX_PIVOTS: int = 10_000

    def __init__(self, lp: LinearProgram) -> None:
        self._lp = lp
        self._tableau, self._basis, self._artificial = self._initialize_tableau()
        self._pivots = 0

    def _initialize_tableau(self) -> Tuple[NDArray[np.float64], List[int], NDArray[np.bool_]]:
        """
        Builds the phase-1 tableau.

        Returns
        -------
        Tuple[NDArray[np.float64], List[int], NDArray[np.bool_]]
            The tableau, the starting basis and the artificial column mask.
        """

        lp = self._lp
        n = lp.n
        rows = np.vstack([lp.a, np.eye(n)])
        rhs = np.concatenate([lp.b - lp.a @ lp.lower, lp.upper - lp.lower])
        m = rows.shape[0]
        flipped = np.flatnonzero(rhs < 0)

        columns = n + m + flipped.size
        tableau = np.zeros((m, columns + 1))
        tableau[:, :n] = rows
        tableau[:, n:n + m] = np.eye(m)
        tableau[:, -1] = rhs
        tableau[flipped, :] *= -1

        basis = list(range(n, n + m))
        for offset, row in enumerate(flipped):
            column = n + m + offset
            tableau[row, column] = 1.0
            basis[row] = column

        artificial = np.zeros(columns, dtype=bool)
        artificial[n + m:] = True

        return tableau, basis, artificial

    def _find_pivot_column(self, cost: NDArray[np.float64], allowed: NDArray[np.bool_]) -> int:
        reduced = cost - cost[self._basis] @ self._tableau[:, :-1]
        candidates = np.flatnonzero(allowed & (reduced < -self._REDUCED_COST_TOLERANCE))

        return int(candidates[0]) if candidates.size else -1

    def _find_pivot_row(self, column: int) -> int:
        entries = self._tableau[:, column]
        eligible = np.flatnonzero(entries > self._PIVOT_TOLERANCE)
        if not eligible.size:
            return -1

        ratios = np.maximum(self._tableau[eligible, -1], 0.0) / entries[eligible]
        ties = eligible[ratios <= ratios.min() + self._PIVOT_TOLERANCE]
        basic = np.asarray(self._basis)[ties]

        return int(ties[np.argmin(basic)])

    def _pivot(self, row: int, column: int) -> None:
        tableau = self._tableau
        tableau[row, :] /= tableau[row, column]
        pivot_row = tableau[row, :].copy()
        tableau -= np.outer(tableau[:, column], pivot_row)
        tableau[row, :] = pivot_row
        self._basis[row] = column
        self._pivots += 1

    def _run_phase(self, cost: NDArray[np.float64], allowed: NDArray[np.bool_]) -> SolveStatus:
        """
        Pivots until no improving column remains.

        Parameters
        ----------
        cost : NDArray[np.float64]
            Cost of every tableau column.
        allowed : NDArray[np.bool_]
            Columns that may enter the basis.

        Returns
        -------
        SolveStatus
            OPTIMAL, UNBOUNDED or ITERATION_LIMIT.
        """

        while self._pivots < self._MAX_PIVOTS:
            column = self._find_pivot_column(cost, allowed)
            if column < 0:
                return SolveStatus.OPTIMAL
            row = self._find_pivot_row(column)
            if row < 0:
                return SolveStatus.UNBOUNDED
            self._pivot(row, column)

        return SolveStatus.ITERATION_LIMIT

    def _transition_to_phase_two(self) -> None:
        keep = []
        for row, column in enumerate(self._basis):
            if not self._artificial[column]:
                keep.append(row)
                continue
            pivotable = np.abs(self._tableau[row, :-1]) > self._FEASIBILITY_TOLERANCE
            candidates = np.flatnonzero(~self._artificial & pivotable)
            if candidates.size:
                self._pivot(row, int(candidates[0]))
                keep.append(row)

        self._tableau = self._tableau[keep, :]
        self._basis = [self._basis[row] for row in keep]

    def _current_point(self) -> NDArray[np.float64]:
        values = np.zeros(self._tableau.shape[1] - 1)
        values[self._basis] = self._tableau[:, -1]
        lp = self._lp

        return np.clip(lp.lower + values[:lp.n], lp.lower, lp.upper)

    def _report(self, status: SolveStatus, certificate: Optional[float] = None) -> SolveReport:
        x = self._current_point()
        objective = float(self._lp.c @ x) if status is SolveStatus.OPTIMAL else float('inf')

        return SolveReport(status=status, objective=objective, x=x, gap=0.0, iterations=self._pivots,
                           residual=self._lp.residual(x), certificate=certificate)

    def solve(self) -> SolveReport:
        """
        Runs phase 1 and, on a feasible problem, phase 2.

        Returns
        -------
        SolveReport
            Optimal basic solution, or the infeasible/unbounded/iteration-limit status. Infeasible
            reports carry the minimal total violation of phase 1 as certificate.
        """

        columns = self._artificial.size
        if self._artificial.any():
            status = self._run_phase(self._artificial.astype(np.float64), np.ones(columns, dtype=bool))
            violation = float(sum(self._tableau[row, -1] for row, column in enumerate(self._basis)
                                  if self._artificial[column]))
            if status is not SolveStatus.OPTIMAL:
                return self._report(status)
            if violation > self._FEASIBILITY_TOLERANCE:
                logger.debug(f'phase 1 ended with violation {violation:.3e}')
                return self._report(SolveStatus.INFEASIBLE, certificate=violation)
            self._transition_to_phase_two()

        cost = np.zeros(columns)
        cost[:self._lp.n] = self._lp.c
        status = self._run_phase(cost, ~self._artificial)

        return self._report(status)


def solve_lp(lp: LinearProgram) -> SolveReport:
    """
    Solves a box-constrained linear program with the dense simplex.

    Parameters
    ----------
    lp : LinearProgram
        Problem to solve.

    Returns
    -------
    SolveReport
        Infeasibility and unboundedness are reported in the status, never raised.
    """

    return DenseSimplex(lp).solve()
