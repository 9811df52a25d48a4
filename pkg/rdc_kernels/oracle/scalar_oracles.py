"""
Exact one-shot oracles. After the reduction to the weight a of the identity map, rate, distortion and
classification are affine in a, so each problem is a one-dimensional LP solved by intersecting the
half-lines alpha * a <= beta with [0, 1].
"""

from typing import Iterable, Tuple

from ..binary_info import Bits, Probability, SourceModel, binary_entropy
from ..errors import InfeasibleProblemError
from ..oneshot import OperatingPoint

INTERVAL_SLACK = 1e-12


def _feasible_interval(half_lines: Iterable[Tuple[float, float]]) -> Tuple[float, float]:
    low, high = 0.0, 1.0
    for alpha, beta in half_lines:
        if alpha > 0:
            high = min(high, beta / alpha)
        elif alpha < 0:
            low = max(low, beta / alpha)
        elif beta < -INTERVAL_SLACK:
            raise InfeasibleProblemError(f'constraint 0 <= {beta!r} cannot hold', certificate=-beta)
    if low > high + INTERVAL_SLACK:
        raise InfeasibleProblemError(f'feasible weights [{low!r}, {high!r}] are empty', certificate=low - high)

    return min(low, high), high


def _classification_half_line(model: SourceModel, c: Bits) -> Tuple[float, float]:
    m = (1 - model.q_x) * (1 - model.q_s1) + model.q_x * model.q_s1
    h_m = binary_entropy(m)

    return binary_entropy(model.q_s1) - h_m, c - h_m


def scalar_lp_oracle_rdc(model: SourceModel, point: OperatingPoint) -> Bits:
    """
    Minimizes H(q_X) a subject to q_X (1 - a) <= D and a H(q_S1) + (1 - a) H(m) <= C over a in [0, 1].

    Raises
    ------
    InfeasibleProblemError
        When no weight satisfies both budgets.
    """

    low, _ = _feasible_interval([(-model.q_x, point.d - model.q_x), _classification_half_line(model, point.c)])

    return binary_entropy(model.q_x) * low


def scalar_lp_oracle_drc(model: SourceModel, r: Bits, c: Bits) -> Probability:
    """
    Minimizes q_X (1 - a) subject to H(q_X) a <= R and the classification budget over a in [0, 1].

    Raises
    ------
    InfeasibleProblemError
        When no weight satisfies both budgets.
    """

    _, high = _feasible_interval([(binary_entropy(model.q_x), r), _classification_half_line(model, c)])

    return model.q_x * (1 - high)
