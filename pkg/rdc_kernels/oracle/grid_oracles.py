"""
Brute-force grid oracles for the one-shot rate and the distortion-classification lower boundary.
"""

import logging

import numpy as np

from .grid_spec import GridSpec
from ..binary_info import Bits, Probability, ROUND_OFF_SLACK, SourceModel, binary_entropy, inverse_binary_entropy
from ..dc_region import RepresentationChannel
from ..errors import GridConfigurationError, InfeasibleProblemError
from ..oneshot import OperatingPoint

logger = logging.getLogger(__name__)

MAX_DECODER_SYMBOLS = 5
FULL_GRID_LIMIT = 4_000_000
SAMPLE_CHUNK = 250_000


def four_map_enumeration_oracle(model: SourceModel, point: OperatingPoint, grid: GridSpec) -> Bits:
    """
    Smallest one-shot rate over seed distributions on the grid of the 3-simplex.

    The seed weights (p1, p2, p3, p4) of the maps x -> x, x -> 1-x, x -> 0 and x -> 1 are multiples of
    1 / (resolution - 1). The rate H(q_X)(p1 + p2) and the classification term depend on the level
    p1 + p2 only, so levels are visited in increasing order and the first level holding a feasible point
    is returned; every point of a level is evaluated.

    Parameters
    ----------
    model : SourceModel
        Source model.
    point : OperatingPoint
        Distortion and classification budgets.
    grid : GridSpec
        Grid resolution.

    Raises
    ------
    InfeasibleProblemError
        When no grid point meets both budgets; a finer grid may.

    Returns
    -------
    Bits
        The best grid rate, never below the exact optimum.
    """

    steps = grid.resolution - 1
    q = model.q_x
    m = (1 - q) * (1 - model.q_s1) + q * model.q_s1
    h_s1, h_m = binary_entropy(model.q_s1), binary_entropy(m)

    for level in range(steps + 1):
        informative = level / steps
        if informative * h_s1 + (1 - informative) * h_m > point.c + ROUND_OFF_SLACK:
            continue
        flipped = np.arange(level + 1)
        to_zero = np.arange(steps - level + 1)
        to_one = steps - level - to_zero
        distortion = np.add.outer(flipped, q * to_zero + (1 - q) * to_one) / steps
        if distortion.min() <= point.d + ROUND_OFF_SLACK:
            return binary_entropy(q) * informative

    raise InfeasibleProblemError(f'no seed distribution on a {grid.resolution}-point grid meets {point}')


def _channel_grid_values(q, eps, axes, q_s1):
    distortion = float(q @ (1 - eps))
    row = 0.0
    for index, axis in enumerate(axes):
        shape = [1] * len(axes)
        shape[index] = -1
        values = np.reshape(axis, shape)
        distortion = distortion + q[index] * (2 * eps[index] - 1) * values
        row = row + (1 - 2 * q_s1) * q[index] * eps[index] * values

    return distortion, row


def dc_grid_oracle(channel: RepresentationChannel, q_s1: Probability, c: Bits, grid: GridSpec) -> Probability:
    """
    Smallest distortion of a decoder on a grid of the decoder box that meets the classification row.

    Up to four million points the box is gridded with `grid.resolution` points per axis; beyond that the
    same number of uniform samples is drawn with `grid.seed`.

    Raises
    ------
    GridConfigurationError
        When the channel has more than five symbols.
    InfeasibleProblemError
        When no evaluated decoder meets the row.
    """

    n = channel.n
    if n > MAX_DECODER_SYMBOLS:
        raise GridConfigurationError(f'grid oracle supports at most {MAX_DECODER_SYMBOLS} symbols, got {n}')

    q, eps = np.asarray(channel.q), np.asarray(channel.eps)
    keep = 1 - eps
    lower = np.where(keep >= 0.5, keep, 0.0)
    upper = np.where(keep >= 0.5, 1.0, keep)
    capacity = (inverse_binary_entropy(c) - q_s1) * float(q @ eps) + ROUND_OFF_SLACK

    best = np.inf
    if grid.resolution ** n <= FULL_GRID_LIMIT:
        axes = [np.linspace(low, high, grid.resolution) for low, high in zip(lower, upper)]
        distortion, row = _channel_grid_values(q, eps, axes, q_s1)
        feasible = np.broadcast_to(row, np.shape(distortion)) <= capacity
        if feasible.any():
            best = float(np.min(np.where(feasible, distortion, np.inf)))
    else:
        rng = np.random.default_rng(grid.seed)
        for _ in range(-(-FULL_GRID_LIMIT // SAMPLE_CHUNK)):
            samples = rng.uniform(lower, upper, size=(SAMPLE_CHUNK, n))
            distortion = float(q @ keep) + samples @ (q * (2 * eps - 1))
            row = samples @ ((1 - 2 * q_s1) * q * eps)
            if np.any(row <= capacity):
                best = min(best, float(np.min(distortion[row <= capacity])))
        logger.debug(f'dc grid oracle sampled {FULL_GRID_LIMIT} decoders with seed {grid.seed}')

    if not np.isfinite(best):
        raise InfeasibleProblemError(f'no decoder on the grid meets classification budget {c:g}')

    return best
