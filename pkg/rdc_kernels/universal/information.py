"""
Mutual information between the source bit and the pair of reconstructions, and its log-sum surrogate.

Per cell (i, j) the contribution is
    (1 - q) p_ij|0 log2(p_ij|0 / mix) + q p_ij|1 log2(p_ij|1 / mix),  mix = (1 - q) p_ij|0 + q p_ij|1,
which is nonnegative by the log-sum inequality. The surrogate keeps the cells 00, 01 and 11 only.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import rel_entr

from .joint_decoder_pmf import JointDecoderPMF
from ..binary_info import Bits, Probability
from ..solver import BlockMinorant

GRADIENT_FLOOR = 1e-15
RATIO_RANGE = (1e-12, 1e12)
CELL_BLOCKS = ((0, 3), (1, 4), (2, 5))


def _cell_information(q_x: Probability, given_zero: NDArray[np.float64], given_one: NDArray[np.float64]) -> Bits:
    mix = (1 - q_x) * given_zero + q_x * given_one
    total = np.zeros_like(mix)
    if q_x < 1:
        total += (1 - q_x) * rel_entr(given_zero, mix)
    if q_x > 0:
        total += q_x * rel_entr(given_one, mix)

    return float(total.sum()) / math.log(2)


def i_lb_free(q_x: Probability, coords: ArrayLike) -> Bits:
    """Surrogate evaluated on the six free coordinates, clipped onto [0, 1]."""

    coords = np.clip(np.asarray(coords, dtype=np.float64), 0.0, 1.0)

    return _cell_information(q_x, coords[:3], coords[3:])


def i_lb(q_x: Probability, pmf: JointDecoderPMF) -> Bits:
    """
    Log-sum surrogate of I(X; X1, X2) without the 10 cells.

    Parameters
    ----------
    q_x : Probability
        P(X = 1).
    pmf : JointDecoderPMF
        Joint decoder.

    Returns
    -------
    Bits
        A value in [0, mutual_information_exact(q_x, pmf)].
    """

    return i_lb_free(q_x, pmf.free)


def i_lb_gradient(q_x: Probability, coords: ArrayLike) -> NDArray[np.float64]:
    """
    Gradient of i_lb_free.

    Parameters
    ----------
    q_x : Probability
        P(X = 1).
    coords : ArrayLike
        Six free coordinates.

    Returns
    -------
    NDArray[np.float64]
        (1 - q) log2(p|0 / mix) for the first three coordinates and q log2(p|1 / mix) for the last
        three. The mixture is taken from the unfloored pair; a single vanishing probability is floored
        at 1e-15. An empty cell is not differentiable and gets the subgradient (0, 0), the tangent of
        the cell at equal probabilities.
    """

    coords = np.asarray(coords, dtype=np.float64)
    given_zero, given_one = coords[:3], coords[3:]
    mix = (1 - q_x) * given_zero + q_x * given_one
    empty = mix <= GRADIENT_FLOOR
    mix = np.maximum(mix, GRADIENT_FLOOR)
    zero_part = (1 - q_x) * np.log2(np.maximum(given_zero, GRADIENT_FLOOR) / mix)
    one_part = q_x * np.log2(np.maximum(given_one, GRADIENT_FLOOR) / mix)

    return np.concatenate([np.where(empty, 0.0, zero_part), np.where(empty, 0.0, one_part)])


def cell_tangent(q_x: Probability, ratio: float) -> NDArray[np.float64]:
    """Gradient of one surrogate cell at (1, ratio); by homogeneity a subgradient along the whole ray."""

    mix = 1 - q_x + q_x * ratio

    return np.array([-(1 - q_x) * math.log2(mix), q_x * math.log2(ratio / mix)])


def i_lb_minorant(q_x: Probability, anchors: ArrayLike) -> BlockMinorant:
    """
    Piecewise-linear minorant of i_lb_free from the tangents of each cell.

    Each cell is positively homogeneous and convex in (p|0, p|1), so every tangent at a ray through
    the origin lies below it everywhere. The tangents used are the ratio-one tangent (0, 0) and the
    tangents along the rays of the nonempty cells of the anchors, shared by the three cells.

    Parameters
    ----------
    q_x : Probability
        P(X = 1), strictly between 0 and 1.
    anchors : ArrayLike
        Points of six free coordinates, one per row.

    Returns
    -------
    BlockMinorant
        Blocks (a_ij, b_ij) for the cells 00, 01 and 11.
    """

    anchors = np.clip(np.atleast_2d(np.asarray(anchors, dtype=np.float64)), 0.0, 1.0)
    ratios = {1.0}
    for given_zero, given_one in zip(anchors[:, :3].ravel(), anchors[:, 3:].ravel()):
        if max(given_zero, given_one) > GRADIENT_FLOOR:
            ratio = given_one / given_zero if given_zero > 0 else math.inf
            ratios.add(float(np.clip(ratio, *RATIO_RANGE)))
    cuts = np.array([cell_tangent(q_x, ratio) for ratio in sorted(ratios)])

    return BlockMinorant(blocks=CELL_BLOCKS, cuts=(cuts,) * len(CELL_BLOCKS))


def mutual_information_exact(q_x: Probability, pmf: JointDecoderPMF) -> Bits:
    """I(X; X1, X2) over all four cells, with 0 log 0 = 0."""

    return _cell_information(q_x, pmf.table[0].ravel(), pmf.table[1].ravel())
