"""
Accelerated projected-gradient oracle for the universality bound problems.

Independent of the conditional-gradient path: the constraint rows, the surrogate and its gradient are
rebuilt here, and the Euclidean projection onto the polytope {x: G x <= h} is the least-distance program
min ||z|| s.t. G z <= h - G y, solved through the non-negative least squares dual.
"""

import logging
import math
from functools import partial
from typing import Callable, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import nnls

from .grid_spec import GridSpec
from ..binary_info import Bits, ROUND_OFF_SLACK, SourceModel, binary_entropy, inverse_binary_entropy
from ..enumerators import RateBound
from ..errors import DomainError, InfeasibleProblemError

logger = logging.getLogger(__name__)

DESCENT_STARTS = 4
MAX_DESCENT_ITERATIONS = 2000
STEP_TOLERANCE = 1e-13
GRADIENT_FLOOR = 1e-15


def _polytope(model: SourceModel, r: Bits, problem: RateBound) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    q, s = model.q_x, model.q_s1
    b = min(q, 1 - q)
    h_b = binary_entropy(b)
    if not 0 < r <= h_b + ROUND_OFF_SLACK:
        raise DomainError(f'rate r={r!r} is outside the admissible interval (0, {h_b:.12g}]')
    c0 = inverse_binary_entropy(max(0.0, h_b - r))
    crossover_limit = s + (1 - 2 * s) * c0

    # x = (p00|0, p01|0, p11|0, p00|1, p01|1, p11|1)
    rows = [
        ([-(1 - q), -(1 - q), 0, q, q, 0], c0 - (1 - q)),
        ([0, 1 - q, 1 - q, 0, -q, -q], b - q),
        ([0, 1 - 2 * s, 1 - 2 * s, 0, 0, 0], crossover_limit - s),
        ([1, 1, 1, 0, 0, 0], 1.0),
        ([0, 0, 0, 1, 1, 1], 1.0),
    ]
    if problem is RateBound.LOWER:
        rows.append(([-(1 - 2 * s), -(1 - 2 * s), 0, 0, 0, 0], crossover_limit - (1 - s)))
    else:
        rows.append(([-1, -1, 0, 0, 0, 0], -1.0))
        rows.append(([0, 0, 1, 0, 0, 0], 0.0))
    for index in range(6):
        unit = np.eye(6)[index]
        rows.append((-unit, 0.0))
        rows.append((unit, 1.0))

    g = np.array([row for row, _ in rows], dtype=np.float64)
    h = np.array([limit for _, limit in rows], dtype=np.float64)

    return g, h


def _projector(g: NDArray[np.float64], h: NDArray[np.float64]) -> Callable[[NDArray[np.float64]], NDArray[np.float64]]:
    n = g.shape[1]
    target = np.zeros(n + 1)
    target[-1] = 1.0

    def project(y: NDArray[np.float64]) -> NDArray[np.float64]:
        shortfall = g @ y - h
        if np.all(shortfall <= 0):
            return y
        # least-distance program min ||z|| s.t. (-g) z >= shortfall
        system = np.vstack([-g.T, shortfall[np.newaxis, :]])
        weights, _ = nnls(system, target)
        residual = system @ weights - target
        if abs(residual[-1]) < 1e-14:
            raise InfeasibleProblemError('the bound polytope is empty')

        return y - residual[:n] / residual[-1]

    return project


def _surrogate(q: float, x: NDArray[np.float64]) -> float:
    x = np.clip(x, 0.0, 1.0)
    given_zero, given_one = x[:3], x[3:]
    mix = (1 - q) * given_zero + q * given_one
    with np.errstate(divide='ignore', invalid='ignore'):
        zero_part = np.where(given_zero > 0, given_zero * np.log2(given_zero / mix), 0.0)
        one_part = np.where(given_one > 0, given_one * np.log2(given_one / mix), 0.0)

    return float(np.sum((1 - q) * zero_part + q * one_part))


def _surrogate_gradient(q: float, x: NDArray[np.float64]) -> NDArray[np.float64]:
    x = np.maximum(x, GRADIENT_FLOOR)
    mix = np.maximum((1 - q) * x[:3] + q * x[3:], GRADIENT_FLOOR)

    return np.concatenate([(1 - q) * np.log2(x[:3] / mix), q * np.log2(x[3:] / mix)])


def _descend(start, objective, gradient, project) -> Tuple[NDArray[np.float64], float]:
    x, fx = start, objective(start)
    y, momentum, lipschitz = start, 1.0, 1.0

    for _ in range(MAX_DESCENT_ITERATIONS):
        fy, slope = objective(y), gradient(y)
        while True:
            candidate = project(y - slope / lipschitz)
            step = candidate - y
            if objective(candidate) <= fy + slope @ step + lipschitz / 2 * step @ step + 1e-15 or lipschitz > 1e14:
                break
            lipschitz *= 2
        value = objective(candidate)

        if value > fx:
            if y is x:
                break
            y, momentum = x, 1.0
            continue
        moved = float(np.linalg.norm(candidate - x))
        next_momentum = (1 + math.sqrt(1 + 4 * momentum ** 2)) / 2
        y = candidate + (momentum - 1) / next_momentum * (candidate - x)
        x, fx, momentum = candidate, value, next_momentum
        lipschitz *= 0.9
        if moved < STEP_TOLERANCE:
            break

    return x, fx


def projected_gradient_oracle(model: SourceModel, r: Bits, problem: RateBound, grid: GridSpec) -> Bits:
    """
    Minimizes the log-sum surrogate over the lower- or upper-bound polytope by projected gradient.

    `grid.resolution` random box points drawn with `grid.seed` are projected onto the polytope; the
    four with the smallest surrogate start an accelerated descent with backtracking and restarts.

    Parameters
    ----------
    model : SourceModel
        Source model.
    r : Bits
        Rate level in (0, H(b)].
    problem : RateBound
        Lower- or upper-bound problem.
    grid : GridSpec
        Number and seed of the random starts.

    Raises
    ------
    DomainError
        When r is outside the admissible interval.
    InfeasibleProblemError
        When the polytope is empty.

    Returns
    -------
    Bits
        The smallest surrogate value reached.
    """

    g, h = _polytope(model, r, problem)
    project = _projector(g, h)
    objective = partial(_surrogate, model.q_x)
    gradient = partial(_surrogate_gradient, model.q_x)

    rng = np.random.default_rng(grid.seed)
    starts = [project(point) for point in rng.uniform(0.0, 1.0, size=(grid.resolution, 6))]
    ranked = sorted(range(len(starts)), key=lambda index: (objective(starts[index]), index))

    best = math.inf
    for index in ranked[:DESCENT_STARTS]:
        _, value = _descend(starts[index], objective, gradient, project)
        best = min(best, value)
    logger.debug(f'projected gradient {problem.value} at r={r:g}: {best:.12g}')

    return best
