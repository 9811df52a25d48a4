"""
Conditional-gradient (Frank-Wolfe) minimization of convex objectives over the polytope of a
LinearProgram, with the linear subproblems solved by the dense simplex.

Every iterate yields a lower bound on the minimum: the Frank-Wolfe bound f(x) - g.(x - v) and, when a
minorant is supplied, the minimum of the minorant built from the tangents at x and at v. The reported
gap is the best objective seen minus the best lower bound seen.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize_scalar

from .block_minorant import BlockMinorant
from .linear_program import LinearProgram, SolveReport
from .simplex import solve_lp
from ..enumerators import SolveStatus, StepRule
from ..errors import LinearSubproblemError

logger = logging.getLogger(__name__)

Objective = Callable[[NDArray[np.float64]], float]
Gradient = Callable[[NDArray[np.float64]], NDArray[np.float64]]
Minorant = Callable[[NDArray[np.float64]], BlockMinorant]

DEFAULT_SEED = 2024
VERTEX_TOLERANCE = 1e-12
MINORANT_ROUNDS = 16


class _Certificate(NamedTuple):
    value: float
    gradient: NDArray[np.float64]
    vertex: NDArray[np.float64]
    lower: float
    lifted: Optional[NDArray[np.float64]]
    lifted_value: float


@dataclass
class _Run:
    x: NDArray[np.float64]
    objective: float
    lower: float
    iterations: int
    trace: List[float]

    @property
    def gap(self) -> float:
        return max(self.objective - self.lower, 0.0)


class ConditionalGradient:
    """
    ConditionalGradient runs Frank-Wolfe iterations from given starting points.

    With the open-loop rule the step is 2/(k+2). With line search the step minimizes the objective
    along the direction and away steps towards the active vertex decomposition are taken when they
    promise more decrease than the Frank-Wolfe direction. The vertex of each linear subproblem and the
    minimizer of the minorant are feasible points too; they replace the best iterate when they are better.

    Attributes
    ----------
    _objective : Objective
        Function being minimized.
    _gradient : Gradient
        Its gradient, or a subgradient where it is not differentiable.
    _polytope : LinearProgram
        Feasible region; its objective vector is ignored.
    _step_rule : StepRule
        Step size rule.
    _max_iterations : int
        Iteration budget per start.
    _tolerance : float
        Duality gap at which a run stops.
    _minorant : Minorant, optional
        Builds a BlockMinorant of the objective from a stack of anchor points.

    Methods
    -------
    linear_minimizer()
        Vertex minimizing a linear function over the polytope.
    random_start()
        Random convex combination of random vertices.
    certify()
        Objective, gradient, Frank-Wolfe vertex and lower bound at a point.
    run()
        Iterates from one start and returns the best point seen with the best lower bound.
    """

    def __init__(self, objective: Objective, gradient: Gradient, polytope: LinearProgram, step_rule: StepRule,
                 max_iterations: int, tolerance: float, minorant: Optional[Minorant] = None) -> None:
        self._objective = objective
        self._gradient = gradient
        self._polytope = polytope
        self._step_rule = step_rule
        self._max_iterations = max_iterations
        self._tolerance = tolerance
        self._minorant = minorant

    def linear_minimizer(self, direction: NDArray[np.float64]) -> NDArray[np.float64]:
        report = solve_lp(self._polytope.with_objective(direction))
        if not report.optimal:
            raise LinearSubproblemError(f'linear subproblem ended with status {report.status.value}',
                                        status=report.status)

        return np.array(report.x)

    def random_start(self, rng: np.random.Generator) -> Tuple[List[NDArray[np.float64]], NDArray[np.float64]]:
        """
        Builds a random feasible start as a convex combination of n + 1 random vertices.

        Parameters
        ----------
        rng : np.random.Generator
            Source of randomness.

        Returns
        -------
        Tuple[List[NDArray[np.float64]], NDArray[np.float64]]
            Distinct vertices and their convex weights.
        """

        n = self._polytope.n
        vertices: List[NDArray[np.float64]] = []
        weights: List[float] = []
        for vertex, weight in zip((self.linear_minimizer(rng.normal(size=n)) for _ in range(n + 1)),
                                  rng.dirichlet(np.ones(n + 1))):
            index = _vertex_index(vertex, vertices)
            if index is None:
                vertices.append(vertex)
                weights.append(weight)
            else:
                weights[index] += weight

        weights = np.asarray(weights)

        return vertices, weights / weights.sum()

    def certify(self, x: NDArray[np.float64]) -> _Certificate:
        """
        Lower bound on the minimum over the polytope certified at a feasible point.

        The minorant is refined for a few rounds, each adding the tangents at the previous minimizer of
        the minorant, until the bound meets the best objective seen or the minimizer repeats.

        Parameters
        ----------
        x : NDArray[np.float64]
            Feasible point.

        Returns
        -------
        _Certificate
            Objective and gradient at x, the Frank-Wolfe vertex, the lower bound and, when the minorant
            was solved, the best of its minimizers with its objective.
        """

        value = self._objective(x)
        gradient = self._gradient(x)
        vertex = self.linear_minimizer(gradient)
        lower = value - float(gradient @ (x - vertex))
        lifted, lifted_value = None, math.inf
        anchors = [x, vertex]
        for _ in range(MINORANT_ROUNDS if self._minorant is not None else 0):
            if min(value, lifted_value) - lower <= self._tolerance:
                break
            bound, point = self._minorant(np.vstack(anchors)).lower_bound(self._polytope)
            lower = max(lower, bound)
            point_value = self._objective(point)
            if point_value < lifted_value:
                lifted, lifted_value = point, point_value
            if _vertex_index(point, anchors) is not None:
                break
            anchors.append(point)

        return _Certificate(value=value, gradient=gradient, vertex=vertex, lower=lower, lifted=lifted,
                            lifted_value=lifted_value)

    def _line_search(self, x: NDArray[np.float64], direction: NDArray[np.float64], longest: float) -> float:
        def along(step: float) -> float:
            return self._objective(x + step * direction)

        result = minimize_scalar(along, bounds=(0.0, longest), method='bounded', options={'xatol': 1e-12})
        candidates = [(along(longest), longest), (float(result.fun), float(result.x)), (along(0.0), 0.0)]

        return min(candidates, key=lambda candidate: candidate[0])[1]

    def _line_search_step(self, x, certificate, vertices, weights):
        gradient, vertex = certificate.gradient, certificate.vertex
        gap = float(gradient @ (x - vertex))
        away = int(np.argmax([gradient @ v for v in vertices]))
        away_gap = float(gradient @ (vertices[away] - x))
        if gap >= away_gap or weights[away] >= 1.0:
            step = self._line_search(x, vertex - x, 1.0)
            vertices, weights = _toward(vertex, step, vertices, weights)
        else:
            longest = weights[away] / (1.0 - weights[away])
            step = self._line_search(x, x - vertices[away], longest)
            vertices, weights = _away_from(away, step, longest, vertices, weights)
        if step == 0.0 and certificate.lifted is not None:
            step = self._line_search(x, certificate.lifted - x, 1.0)
            vertices, weights = _toward(certificate.lifted, step, vertices, weights)

        return step, vertices, weights

    def run(self, vertices: List[NDArray[np.float64]], weights: NDArray[np.float64],
            lower: float = -math.inf) -> _Run:
        """
        Iterates from the point given by an active vertex decomposition.

        Parameters
        ----------
        vertices : List[NDArray[np.float64]]
            Active vertices.
        weights : NDArray[np.float64]
            Convex weights of the active vertices.
        lower : float
            Lower bound on the minimum already known, from earlier runs.

        Returns
        -------
        _Run
            Best point seen, its objective, the best lower bound, the iteration it was found at and the
            best-so-far trace.
        """

        vertices = list(vertices)
        weights = np.array(weights, dtype=np.float64)
        x = weights @ np.asarray(vertices)
        best: Optional[_Run] = None
        trace: List[float] = []

        for k in range(self._max_iterations + 1):
            certificate = self.certify(x)
            lower = max(lower, certificate.lower)
            if best is None or certificate.value < best.objective:
                best = _Run(x=x.copy(), objective=certificate.value, lower=lower, iterations=k, trace=trace)
            for atom in (certificate.vertex, certificate.lifted):
                if atom is None or best.objective - lower <= self._tolerance:
                    continue
                if self._objective(atom) >= best.objective:
                    continue
                atom_certificate = self.certify(atom)
                lower = max(lower, atom_certificate.lower)
                best = _Run(x=atom.copy(), objective=atom_certificate.value, lower=lower, iterations=k, trace=trace)
            best.lower = lower
            trace.append(best.objective)
            if best.gap <= self._tolerance or k == self._max_iterations:
                break

            if self._step_rule is StepRule.OPEN_LOOP:
                vertices, weights = _toward(certificate.vertex, 2.0 / (k + 2), vertices, weights)
            else:
                step, vertices, weights = self._line_search_step(x, certificate, vertices, weights)
                if step == 0.0:
                    logger.debug(f'line search stalled at iteration {k} with gap {best.gap:.3e}')
                    break

            x = weights @ np.asarray(vertices)

        best.trace = trace

        return best


def _vertex_index(vertex: NDArray[np.float64], vertices: List[NDArray[np.float64]]) -> Optional[int]:
    for index, candidate in enumerate(vertices):
        if np.allclose(candidate, vertex, rtol=0.0, atol=VERTEX_TOLERANCE):
            return index

    return None


def _toward(vertex, step, vertices, weights):
    if step >= 1.0:
        return [vertex], np.ones(1)

    weights = weights * (1.0 - step)
    index = _vertex_index(vertex, vertices)
    if index is None:
        return vertices + [vertex], np.append(weights, step)
    weights[index] += step

    return vertices, weights


def _away_from(index, step, longest, vertices, weights):
    weights = weights * (1.0 + step)
    if step >= longest:
        return vertices[:index] + vertices[index + 1:], np.delete(weights, index)
    weights[index] -= step

    return vertices, weights


def minimize_convex(objective: Objective, gradient: Gradient, polytope: LinearProgram, starts: int = 16,
                    seed: int = DEFAULT_SEED, max_iterations: int = 100_000, tolerance: float = 1e-9,
                    step_rule: StepRule = StepRule.OPEN_LOOP, minorant: Optional[Minorant] = None) -> SolveReport:
    """
    Minimizes a convex function over a polytope by conditional gradient.

    Parameters
    ----------
    objective : Objective
        Convex function, finite on the polytope.
    gradient : Gradient
        Gradient of the objective, or a subgradient where it is not differentiable.
    polytope : LinearProgram
        Feasible region; the objective vector of the program is ignored.
    starts : int
        Largest number of random feasible starts. Starting stops once the best objective is certified.
    seed : int
        Seed of the random starts.
    max_iterations : int
        Iteration budget per start.
    tolerance : float
        Duality gap below which a run is optimal.
    step_rule : StepRule
        Open-loop 2/(k+2) steps or line search with away steps.
    minorant : Minorant, optional
        Builds a BlockMinorant of the objective from a stack of anchor points; tightens the lower
        bound where the gradient is only a subgradient.

    Raises
    ------
    LinearSubproblemError
        When a linear subproblem over the nonempty polytope is not solved to optimality.

    Returns
    -------
    SolveReport
        Best point over all starts with its certified duality gap. The status is INFEASIBLE for an
        empty polytope and ITERATION_LIMIT when the gap is above the tolerance at the end of the budget.
        The trace holds the best-so-far objective of the winning run.
    """

    feasibility = solve_lp(polytope.with_objective(np.zeros(polytope.n)))
    if not feasibility.optimal:
        return feasibility

    method = ConditionalGradient(objective, gradient, polytope, step_rule, max_iterations, tolerance, minorant)
    rng = np.random.default_rng(seed)
    best: Optional[_Run] = None
    lower = -math.inf
    for start in range(max(starts, 1)):
        run = method.run(*method.random_start(rng), lower=lower)
        lower = max(lower, run.lower)
        logger.debug(f'start {start}: objective {run.objective:.12g}, gap {run.gap:.3e}, '
                     f'{run.iterations} iterations')
        if best is None or run.objective < best.objective:
            best = run
        best.lower = lower
        if best.gap <= tolerance:
            break

    status = SolveStatus.OPTIMAL if best.gap <= tolerance else SolveStatus.ITERATION_LIMIT

    return SolveReport(status=status, objective=best.objective, x=best.x, gap=best.gap, iterations=best.iterations,
                       residual=polytope.residual(best.x), trace=tuple(best.trace))
