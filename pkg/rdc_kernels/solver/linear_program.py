"""
Problem and result records shared by the simplex and conditional-gradient solvers.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..enumerators import SolveStatus
from ..errors import MalformedProblemError

RESIDUAL_TOLERANCE = 1e-9


def _frozen_array(values: ArrayLike, ndim: int, name: str) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    if array.ndim != ndim:
        raise MalformedProblemError(f'{name} must have {ndim} dimension(s), got shape {array.shape}')
    if not np.all(np.isfinite(array)):
        raise MalformedProblemError(f'{name} must contain finite values only')
    array.flags.writeable = False

    return array


@dataclass(frozen=True)
class LinearProgram:
    """
    Minimize c.x subject to a.x <= b and lower <= x <= upper.

    Attributes
    ----------
    c : NDArray[np.float64]
        Objective coefficients, shape (n,).
    a : NDArray[np.float64]
        Inequality matrix, shape (m, n); m may be zero.
    b : NDArray[np.float64]
        Inequality bounds, shape (m,).
    lower : NDArray[np.float64]
        Finite per-variable lower bounds.
    upper : NDArray[np.float64]
        Finite per-variable upper bounds.

    Methods
    -------
    residual()
        Maximum constraint violation of a point.
    with_objective()
        Copy of the problem with another objective vector.
    """

    c: NDArray[np.float64]
    a: NDArray[np.float64]
    b: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        c = _frozen_array(self.c, 1, 'c')
        n = c.shape[0]
        if n == 0:
            raise MalformedProblemError('a linear program needs at least one variable')
        a = _frozen_array(np.zeros((0, n)) if np.size(self.a) == 0 else self.a, 2, 'a')
        b = _frozen_array(np.reshape(np.asarray(self.b, dtype=np.float64), -1), 1, 'b')
        if a.shape[1] != n:
            raise MalformedProblemError(f'a has {a.shape[1]} columns but c has {n} entries')
        lower = _frozen_array(self.lower, 1, 'lower')
        upper = _frozen_array(self.upper, 1, 'upper')

        if b.shape[0] != a.shape[0]:
            raise MalformedProblemError(f'a has {a.shape[0]} rows but b has {b.shape[0]} entries')
        if lower.shape != (n,) or upper.shape != (n,):
            raise MalformedProblemError(f'box bounds must have shape ({n},)')
        if np.any(lower > upper):
            raise MalformedProblemError('lower bounds must not exceed upper bounds')

        for name, value in (('c', c), ('a', a), ('b', b), ('lower', lower), ('upper', upper)):
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    def residual(self, x: ArrayLike) -> float:
        """
        Maximum violation of the rows and the box at a point.

        Parameters
        ----------
        x : ArrayLike
            Point of shape (n,).

        Returns
        -------
        float
            Zero for feasible points, otherwise the largest violation.
        """

        x = np.asarray(x, dtype=np.float64)
        violations = [0.0, float(np.max(self.lower - x)), float(np.max(x - self.upper))]
        if self.a.shape[0]:
            violations.append(float(np.max(self.a @ x - self.b)))

        return max(violations)

    def with_objective(self, c: ArrayLike) -> 'LinearProgram':
        return LinearProgram(c=c, a=self.a, b=self.b, lower=self.lower, upper=self.upper)


@dataclass(frozen=True)
class SolveReport:
    """
    Outcome of a solver run. Infeasible runs carry the phase-1 minimal violation as certificate.
    """

    status: SolveStatus
    objective: float
    x: NDArray[np.float64]
    gap: float
    iterations: int
    residual: float = 0.0
    trace: Tuple[float, ...] = field(default_factory=tuple)
    certificate: Optional[float] = None

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=np.float64)
        x.flags.writeable = False
        object.__setattr__(self, 'x', x)

    @property
    def optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL
