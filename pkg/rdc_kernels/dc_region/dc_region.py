"""
Lower boundary D(C) of the distortion-classification region of a fixed representation channel.

Decoding symbol i to 0 with probability p_i gives
    distortion  sum_i q_i (1 - eps_i) + q_i (2 eps_i - 1) p_i
and the classification budget c becomes the single linear row
    (1 - 2 q_S1) sum_i q_i eps_i p_i <= (H^-1(c) - q_S1) (1 - sum_i q_i (1 - eps_i)).
Each p_i stays on the side of 1/2 its posterior favours: [1 - eps_i, 1] when 1 - eps_i >= 1/2 and
[0, 1 - eps_i] otherwise. The problem is solved by the dense simplex and by a continuous knapsack,
which must agree.
"""

import logging
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .representation_channel import DecoderProfile, RepresentationChannel
from ..binary_info import Bits, Probability, SourceModel, check_probability, inverse_binary_entropy, require_feasible
from ..enumerators import SolveStatus, SweepKind
from ..errors import DomainError, InfeasibleProblemError, SolverDisagreementError
from ..solver import LinearProgram, solve_lp
from ..sweeps import CurveSweep

logger = logging.getLogger(__name__)

AGREEMENT_TOLERANCE = 1e-9


class BoundaryPoint(NamedTuple):
    distortion: Probability
    profile: DecoderProfile


def decoder_box(channel: RepresentationChannel) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Lower and upper ends of the admissible interval of every p_i."""

    return channel.decoder_box()


def map_decoder_distortion(channel: RepresentationChannel) -> Probability:
    """Distortion of the maximum a posteriori decoder, sum_i q_i min(eps_i, 1 - eps_i)."""

    return float(channel.q_array @ np.minimum(channel.eps_array, 1.0 - channel.eps_array))


def classification_crossover(channel: RepresentationChannel, profile: DecoderProfile) -> Probability:
    """P(reconstruction = 0 | X = 1), the crossover bounded by the linearized classification row."""

    q_x = channel.q_x
    if q_x == 0:
        raise DomainError('the channel never produces X = 1')

    return float(channel.q_array @ (channel.eps_array * profile.array)) / q_x


def _validated_coupling(channel: RepresentationChannel, q_s1: Probability, c: Bits) -> SourceModel:
    model = SourceModel(min(channel.q_x, 0.5), q_s1)
    require_feasible(model, c)
    if channel.q_x <= 0:
        raise DomainError('the classification row needs a channel with P(X = 1) > 0')

    return model


def dc_problem(channel: RepresentationChannel, q_s1: Probability, c: Bits) -> LinearProgram:
    """
    Assembles the lower-boundary problem as a LinearProgram; its objective omits the constant
    sum_i q_i (1 - eps_i).

    Parameters
    ----------
    channel : RepresentationChannel
        Representation channel.
    q_s1 : Probability
        Task coupling, below 1/2.
    c : Bits
        Classification budget, at least H_b(q_S1).

    Returns
    -------
    LinearProgram
        One coupling row plus the decoder box.
    """

    model = _validated_coupling(channel, q_s1, c)
    q, eps = channel.q_array, channel.eps_array
    lower, upper = decoder_box(channel)
    row = (1 - 2 * model.q_s1) * q * eps
    limit = (inverse_binary_entropy(c) - model.q_s1) * (1 - float(q @ (1 - eps)))

    return LinearProgram(c=q * (2 * eps - 1), a=row[np.newaxis, :], b=[limit], lower=lower, upper=upper)


def knapsack_boundary(lp: LinearProgram) -> NDArray[np.float64]:
    """
    Solves a one-row, nonnegative-row LP as a continuous knapsack.

    Every variable starts at its lower end; variables with a negative objective coefficient are then
    raised in decreasing order of benefit per unit of row capacity, ties kept in index order.

    Parameters
    ----------
    lp : LinearProgram
        Program with a single row whose coefficients are nonnegative.

    Raises
    ------
    InfeasibleProblemError
        When the lower ends already exceed the row capacity; the certificate is the excess.

    Returns
    -------
    NDArray[np.float64]
        The optimal point.
    """

    row, capacity = lp.a[0], float(lp.b[0])
    x = lp.lower.copy()
    remaining = capacity - float(row @ x)
    if remaining < -AGREEMENT_TOLERANCE:
        raise InfeasibleProblemError(f'the decoder box violates the classification row by {-remaining:.3e}',
                                     certificate=-remaining)

    improving = np.flatnonzero(lp.c < 0)
    with np.errstate(divide='ignore'):
        ratios = np.where(row[improving] > 0, -lp.c[improving] / row[improving], np.inf)
    for index in improving[np.argsort(-ratios, kind='stable')]:
        span = lp.upper[index] - lp.lower[index]
        if row[index] <= 0:
            x[index] = lp.upper[index]
            continue
        raise_by = min(span, max(remaining, 0.0) / row[index])
        x[index] += raise_by
        remaining -= raise_by * row[index]

    return x


def dc_lower_boundary(channel: RepresentationChannel, q_s1: Probability, c: Bits) -> BoundaryPoint:
    """
    Minimum distortion of a decoder meeting the classification budget c.

    Parameters
    ----------
    channel : RepresentationChannel
        Representation channel with P(X = 1) > 0.
    q_s1 : Probability
        Task coupling, below 1/2.
    c : Bits
        Classification budget.

    Raises
    ------
    DegenerateModelError
        When q_s1 = 1/2.
    InfeasibleClassificationError
        When c < H_b(q_s1).
    InfeasibleProblemError
        When no decoder in the box meets the row; the certificate is the minimal violation.
    SolverDisagreementError
        When the simplex and the knapsack optima differ by more than 1e-9.

    Returns
    -------
    BoundaryPoint
        The distortion and the knapsack decoder.
    """

    lp = dc_problem(channel, q_s1, c)
    report = solve_lp(lp)
    if report.status is SolveStatus.INFEASIBLE:
        raise InfeasibleProblemError(f'no decoder meets classification budget {c:g}', certificate=report.certificate)

    x = knapsack_boundary(lp)
    offset = float(channel.q_array @ (1 - channel.eps_array))
    greedy = offset + float(lp.c @ x)
    simplex = offset + report.objective
    if abs(greedy - simplex) > AGREEMENT_TOLERANCE:
        raise SolverDisagreementError(f'simplex {simplex!r} and knapsack {greedy!r} disagree at c={c!r}')

    return BoundaryPoint(greedy, DecoderProfile(tuple(x), channel))


def dc_boundary_curve(channel: RepresentationChannel, q_s1: Probability, c_grid: Sequence[Bits]) -> CurveSweep:
    """
    Samples D(C) on an ascending grid of classification budgets.

    Parameters
    ----------
    channel : RepresentationChannel
        Representation channel.
    q_s1 : Probability
        Task coupling.
    c_grid : Sequence[Bits]
        Strictly ascending budgets.

    Raises
    ------
    DomainError
        When the grid is not strictly ascending.

    Returns
    -------
    CurveSweep
        One sample per feasible budget. Budgets no decoder meets are omitted and counted in
        infeasible_samples; other errors of a sample propagate with a note naming its index.
    """

    grid = [check_probability(c, 'c') for c in c_grid]
    if any(later <= earlier for earlier, later in zip(grid, grid[1:])):
        raise DomainError('classification grid must be strictly ascending')

    samples = []
    for index, c in enumerate(grid):
        try:
            samples.append((c, dc_lower_boundary(channel, q_s1, c).distortion))
        except InfeasibleProblemError as error:
            logger.debug(f'sample {index} at c={c!r} omitted: {error}')
        except Exception as error:
            error.add_note(f'while solving sample {index} at c={c!r}')
            raise
    infeasible = len(grid) - len(samples)
    logger.debug(f'lower boundary sampled at {len(samples)} budgets, {infeasible} infeasible')

    return CurveSweep(kind=SweepKind.DC, params={'q': list(channel.q), 'eps': list(channel.eps), 'q_s1': q_s1},
                      samples=tuple(samples), infeasible_samples=infeasible)
