"""
Asymptotic (block-coding) rate-distortion-classification function and its inversion in distortion.
"""

from .operating_point import OperatingPoint
from ..binary_info import Bits, Probability, ROUND_OFF_SLACK, SourceModel, binary_entropy, inverse_binary_entropy, \
    mgl_threshold, require_feasible
from ..errors import DomainError, InfeasibleProblemError


def asymptotic_b(model: SourceModel) -> Probability:
    """
    The b parameter of the asymptotic closed form, evaluated literally as
    min{q_X(1-2q_S1)/(1-2q_S1), 1 - q_X(1-2q_S1)/(1-2q_S1)}, which equals q_X for valid models.
    """

    scaled = model.q_x * (1 - 2 * model.q_s1) / (1 - 2 * model.q_s1)

    return min(scaled, 1 - scaled)


def asymptotic_rdc(model: SourceModel, point: OperatingPoint) -> Bits:
    """
    Asymptotic rate-distortion-classification function.

    With C0 = mgl_threshold(model, C) the rate is H(b) - H(D) when D < C0 and D <= b, H(b) - H(C0)
    when D >= C0 and C0 <= b, and zero once min{D, C0} > b.

    Parameters
    ----------
    model : SourceModel
        Source model.
    point : OperatingPoint
        Distortion and classification budgets.

    Raises
    ------
    InfeasibleClassificationError
        When point.c < H_b(q_S1).

    Returns
    -------
    Bits
        The asymptotic rate, never above the one-shot rate at the same point.
    """

    b = asymptotic_b(model)
    c0 = mgl_threshold(model, point.c)
    if point.d < c0 and point.d <= b:
        return binary_entropy(b) - binary_entropy(point.d)
    if point.d >= c0 and c0 <= b:
        return binary_entropy(b) - binary_entropy(c0)

    return 0.0


def asymptotic_drc(model: SourceModel, r: Bits, c: Bits) -> Probability:
    """
    Smallest distortion D with asymptotic_rdc(model, (D, c)) <= r.

    Parameters
    ----------
    model : SourceModel
        Source model.
    r : Bits
        Rate budget, nonnegative.
    c : Bits
        Classification budget.

    Raises
    ------
    DomainError
        When r is negative.
    InfeasibleClassificationError
        When c < H_b(q_S1).
    InfeasibleProblemError
        When r is below the plateau H(b) - H(C0) that the classification budget imposes.

    Returns
    -------
    Probability
        H^-1(max(0, H(b) - r)).
    """

    if r < 0:
        raise DomainError(f'rate budget r={r!r} must be nonnegative')
    require_feasible(model, c)
    b = asymptotic_b(model)
    h_b = binary_entropy(b)
    plateau = max(0.0, h_b - binary_entropy(min(mgl_threshold(model, c), b)))
    if r < plateau - ROUND_OFF_SLACK:
        raise InfeasibleProblemError(
            f'rate {r:g} is below the {plateau:.6f} bits that classification budget {c:g} requires',
            certificate=plateau - r,
            details={'required_rate': plateau},
        )

    return inverse_binary_entropy(max(0.0, h_b - r))
