"""
Lower and upper bounds on the universal rate over the sub-level set of the asymptotic rate.

Both bounds minimize the log-sum surrogate of I(X; X1, X2) over a polytope of joint decoders; the
upper-bound problem forces the first reconstruction to never output 1 when X = 0.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import NamedTuple

from .information import i_lb, i_lb_free, i_lb_gradient, i_lb_minorant, mutual_information_exact
from .joint_decoder_pmf import JointDecoderPMF
from .theta import theta_boundary, theta_constraints
from ..binary_info import Bits, SourceModel
from ..enumerators import RateBound, SolveStatus, StepRule
from ..errors import ConvergenceError, DomainError, InfeasibleProblemError
from ..solver import DEFAULT_SEED, RESIDUAL_TOLERANCE, minimize_convex

logger = logging.getLogger(__name__)

ORDERING_TOLERANCE = 1e-8


@dataclass(frozen=True)
class UniversalSettings:
    """
    Solver knobs of the bound problems.

    Attributes
    ----------
    starts : int
        Random feasible starts; the best result is kept.
    seed : int
        Seed of the random starts.
    max_iterations : int
        Conditional-gradient iterations per start.
    gap_tolerance : float
        Duality gap at which a run is optimal.
    step_rule : StepRule
        Step size rule of the conditional-gradient iterations; line search with away steps is opt-in.
    literal_upper_constraint : bool
        Use the printed convolved form of the forced crossover row of the upper-bound problem.
    """

    starts: int = 16
    seed: int = DEFAULT_SEED
    max_iterations: int = 100_000
    gap_tolerance: float = 1e-9
    step_rule: StepRule = StepRule.OPEN_LOOP
    literal_upper_constraint: bool = False

    def __post_init__(self) -> None:
        if self.starts < 1 or self.max_iterations < 0:
            raise DomainError('starts must be positive and max_iterations nonnegative')
        if not self.gap_tolerance > 0:
            raise DomainError('gap_tolerance must be positive')


class RateBoundSolution(NamedTuple):
    rate: Bits
    pmf: JointDecoderPMF
    gap: float
    iterations: int
    status: SolveStatus
    exact_information: Bits


class RatePenaltyBounds(NamedTuple):
    r_lb: Bits
    r_ub: Bits
    penalty_lb: Bits
    penalty_ub: Bits

    @property
    def ordered(self) -> bool:
        return self.r_lb <= self.r_ub + ORDERING_TOLERANCE


def _solve_bound(model: SourceModel, r: Bits, bound: RateBound, settings: UniversalSettings) -> RateBoundSolution:
    constraints = theta_constraints(model, theta_boundary(model, r), bound,
                                    literal_upper=settings.literal_upper_constraint)
    report = minimize_convex(partial(i_lb_free, model.q_x), partial(i_lb_gradient, model.q_x),
                             constraints.polytope(), starts=settings.starts, seed=settings.seed,
                             max_iterations=settings.max_iterations, tolerance=settings.gap_tolerance,
                             step_rule=settings.step_rule, minorant=partial(i_lb_minorant, model.q_x))

    if report.status is SolveStatus.INFEASIBLE:
        raise InfeasibleProblemError(f'the {bound.value} constraint set is empty at r={r:g}',
                                     certificate=report.certificate, details={'bound': bound.value, 'r': r})
    if report.status is SolveStatus.ITERATION_LIMIT:
        raise ConvergenceError(f'{bound.value} solve stopped with gap {report.gap:.3e} at r={r:g}',
                               best_iterate=report.x, gap=report.gap)

    pmf = JointDecoderPMF.from_free(report.x)
    residual = constraints.residual(pmf.free)
    if residual > RESIDUAL_TOLERANCE:
        logger.warning(f'{bound.value} optimizer violates its constraints by {residual:.3e}')
    logger.debug(f'{bound.value} at r={r:g}: {report.objective:.12g} after {report.iterations} iterations')

    return RateBoundSolution(rate=i_lb(model.q_x, pmf), pmf=pmf, gap=report.gap, iterations=report.iterations,
                             status=report.status, exact_information=mutual_information_exact(model.q_x, pmf))


def rate_penalty_lower(model: SourceModel, r: Bits, settings: UniversalSettings = UniversalSettings()
                       ) -> RateBoundSolution:
    """
    Lower bound on the universal rate at rate level r.

    Parameters
    ----------
    model : SourceModel
        Source model.
    r : Bits
        Rate level in (0, H(b)].
    settings : UniversalSettings
        Solver knobs.

    Raises
    ------
    DomainError
        When r is outside the admissible interval.
    ConvergenceError
        When the budget runs out before the gap reaches settings.gap_tolerance.

    Returns
    -------
    RateBoundSolution
        Minimal surrogate value, its joint decoder and solver diagnostics.
    """

    return _solve_bound(model, r, RateBound.LOWER, settings)


def rate_penalty_upper(model: SourceModel, r: Bits, settings: UniversalSettings = UniversalSettings()
                       ) -> RateBoundSolution:
    """
    Upper bound on the universal rate at rate level r; exact_information holds I(X; X1, X2) at the optimizer.

    Raises
    ------
    InfeasibleProblemError
        When settings.literal_upper_constraint is set and q_S1 > 0.
    """

    return _solve_bound(model, r, RateBound.UPPER, settings)


def rate_penalty_bounds(model: SourceModel, r: Bits, settings: UniversalSettings = UniversalSettings()
                        ) -> RatePenaltyBounds:
    r_lb = rate_penalty_lower(model, r, settings).rate
    r_ub = rate_penalty_upper(model, r, settings).rate
    bounds = RatePenaltyBounds(r_lb=r_lb, r_ub=r_ub, penalty_lb=r_lb - r, penalty_ub=r_ub - r)
    if not bounds.ordered:
        logger.warning(f'lower bound {r_lb:.12g} exceeds upper bound {r_ub:.12g} at r={r:g}')

    return bounds
