"""
Binary entropy arithmetic in bits: entropy, its inverse on [0, 1/2], binary convolution and the derived
model quantities shared by every tradeoff computation.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .source_model import Bits, Probability, ROUND_OFF_SLACK, SourceModel, check_probability
from ..errors import DomainError, InfeasibleClassificationError

INVERSE_TOLERANCE = 1e-12
INVERSE_MAX_ITERATIONS = 200


def binary_entropy(p: Probability) -> Bits:
    """
    Binary entropy H_b(p) in bits with the convention 0 log 0 = 0.

    Parameters
    ----------
    p : Probability
        Bernoulli parameter.

    Raises
    ------
    DomainError
        When p is not in [0, 1].

    Returns
    -------
    Bits
        The entropy, in [0, 1].
    """

    p = check_probability(p, 'p')
    if p == 0.0 or p == 1.0:
        return 0.0

    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def binary_entropy_array(p: ArrayLike) -> NDArray[np.float64]:
    """
    Vectorized binary entropy; entries equal to 0 or 1 map to 0 exactly.

    Parameters
    ----------
    p : ArrayLike
        Bernoulli parameters in [0, 1].

    Returns
    -------
    NDArray[np.float64]
        Entropies with the shape of `p`.
    """

    p = np.clip(np.asarray(p, dtype=np.float64), 0.0, 1.0)
    entropy = np.zeros_like(p)
    interior = (p > 0.0) & (p < 1.0)
    q = p[interior]
    entropy[interior] = -q * np.log2(q) - (1 - q) * np.log2(1 - q)

    return entropy


def inverse_binary_entropy(h: Bits) -> Probability:
    """
    Inverse of the binary entropy restricted to [0, 1/2], computed by bisection.

    Parameters
    ----------
    h : Bits
        Entropy value in [0, 1]; values within 1e-12 outside are clamped.

    Raises
    ------
    DomainError
        When h is outside [0, 1].

    Returns
    -------
    Probability
        The unique p in [0, 1/2] with H_b(p) = h, to absolute tolerance 1e-12.
    """

    if not -ROUND_OFF_SLACK <= h <= 1 + ROUND_OFF_SLACK:
        raise DomainError(f'entropy h={h!r} is outside [0, 1]')
    h = min(max(float(h), 0.0), 1.0)
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5

    low, high = 0.0, 0.5
    for _ in range(INVERSE_MAX_ITERATIONS):
        if high - low <= INVERSE_TOLERANCE:
            break
        middle = 0.5 * (low + high)
        if binary_entropy(middle) < h:
            low = middle
        else:
            high = middle

    return 0.5 * (low + high)


def binary_convolution(a: Probability, b: Probability) -> Probability:
    """Crossover of two cascaded binary symmetric channels, a(1-b) + b(1-a)."""

    return a * (1 - b) + b * (1 - a)


def task_prior_m(model: SourceModel) -> Probability:
    """
    P(S = 0) = (1 - q_X)(1 - q_S1) + q_X q_S1, the task prior seen by a constant reconstruction.

    Parameters
    ----------
    model : SourceModel
        Source model.

    Returns
    -------
    Probability
        The task prior m, at least 1/2 for valid models.
    """

    return (1 - model.q_x) * (1 - model.q_s1) + model.q_x * model.q_s1


def entropy_gap(model: SourceModel) -> Bits:
    """H_b(m) - H_b(q_S1); nonnegative, and zero only for a constant source."""

    return binary_entropy(task_prior_m(model)) - binary_entropy(model.q_s1)


def is_feasible(model: SourceModel, c: Bits) -> bool:
    """True when the classification budget c reaches H_b(q_S1), up to round-off slack."""

    return c >= binary_entropy(model.q_s1) - ROUND_OFF_SLACK


def require_feasible(model: SourceModel, c: Bits) -> None:
    """
    Raises when a classification budget cannot be met by any reconstruction.

    Parameters
    ----------
    model : SourceModel
        Source model.
    c : Bits
        Classification budget.

    Raises
    ------
    InfeasibleClassificationError
        When c < H_b(q_S1).

    Returns
    -------
    None
    """

    if not is_feasible(model, c):
        threshold = binary_entropy(model.q_s1)
        raise InfeasibleClassificationError(
            f'classification budget {c:g} is below the feasibility threshold '
            f'H_b(q_S1)=H_b({model.q_s1:g})={threshold:.6f}',
            threshold=threshold,
        )


def mgl_threshold(model: SourceModel, c: Bits) -> Probability:
    """
    Crossover threshold C0 = (H^-1(c) - q_S1) / (1 - 2 q_S1) that the classification budget c
    imposes on a binary symmetric reconstruction channel.

    Parameters
    ----------
    model : SourceModel
        Source model; q_S1 < 1/2 is guaranteed by its construction.
    c : Bits
        Classification budget in [H_b(q_S1), 1].

    Raises
    ------
    InfeasibleClassificationError
        When c < H_b(q_S1).
    DomainError
        When c > 1.

    Returns
    -------
    Probability
        C0 in [0, 1/2].
    """

    require_feasible(model, c)
    threshold = (inverse_binary_entropy(c) - model.q_s1) / (1 - 2 * model.q_s1)

    return min(max(threshold, 0.0), 0.5)
