"""
Closed forms of the one-shot rate-distortion-classification function and of its
distortion-rate-classification dual, both under common randomness.

Every optimum is attained by a seed mixing the identity map with the constant 0, so each problem
reduces to the single weight a on the identity map:
    rate           H_b(q_X) a
    distortion     q_X (1 - a)
    classification a H_b(q_S1) + (1 - a) H_b(m)
"""

from .operating_point import DrcResult, OperatingPoint, RdcResult, SeedDistribution
from ..binary_info import Bits, Probability, ROUND_OFF_SLACK, SourceModel, binary_entropy, check_probability, \
    entropy_gap, is_feasible, require_feasible, task_prior_m
from ..errors import DomainError, InfeasibleProblemError


def feasible(model: SourceModel, c: Bits) -> bool:
    """True iff the classification budget c is at least H_b(q_S1)."""

    return is_feasible(model, c)


def _classification_weight(model: SourceModel, c: Bits) -> float:
    """Smallest identity weight meeting the classification budget, possibly negative when c >= H_b(m)."""

    return (binary_entropy(task_prior_m(model)) - c) / entropy_gap(model)


def rdc_breakpoint(model: SourceModel, c: Bits) -> Probability:
    """
    Distortion D* = q_X (c - H_b(q_S1)) / (H_b(m) - H_b(q_S1)) where the rate curve turns flat.

    Parameters
    ----------
    model : SourceModel
        Source model with q_X > 0.
    c : Bits
        Feasible classification budget.

    Raises
    ------
    DomainError
        When q_X = 0, for which there is no tradeoff.

    Returns
    -------
    Probability
        The breakpoint distortion.
    """

    require_feasible(model, c)
    if model.q_x == 0:
        raise DomainError('a constant source has no rate-distortion breakpoint')

    return model.q_x * (c - binary_entropy(model.q_s1)) / entropy_gap(model)


def drc_breakpoint(model: SourceModel, r: Bits) -> Bits:
    """
    Classification budget R (H_b(q_S1) - H_b(m)) / H_b(q_X) + H_b(m) above which a rate r alone sets
    the distortion.

    Raises
    ------
    DomainError
        When q_X = 0.
    """

    if model.q_x == 0:
        raise DomainError('a constant source has no distortion-rate breakpoint')

    return binary_entropy(task_prior_m(model)) - r * entropy_gap(model) / binary_entropy(model.q_x)


def classification_rate_floor(model: SourceModel, c: Bits) -> Bits:
    """
    Smallest one-shot rate whose reconstruction meets the classification budget c.

    Parameters
    ----------
    model : SourceModel
        Source model.
    c : Bits
        Feasible classification budget.

    Returns
    -------
    Bits
        H_b(q_X) max(0, (H_b(m) - c) / (H_b(m) - H_b(q_S1))).
    """

    require_feasible(model, c)
    if model.q_x == 0:
        return 0.0

    return binary_entropy(model.q_x) * min(max(_classification_weight(model, c), 0.0), 1.0)


def oneshot_rdc(model: SourceModel, point: OperatingPoint) -> RdcResult:
    """
    One-shot rate-distortion-classification function R(D, C).

    The three regimes are the linear decrease H_b(q_X)(q_X - D)/q_X below the breakpoint D*, the
    plateau H_b(q_X)(H_b(m) - C)/(H_b(m) - H_b(q_S1)) from D* on, and zero rate once C >= H_b(m) and
    D >= q_X. The plateau expression is used at D = D* exactly.

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
    RdcResult
        The rate and the optimal seed (a, 0, 1-a, 0).
    """

    require_feasible(model, point.c)
    if model.q_x == 0:
        return RdcResult(0.0, SeedDistribution.identity_mix(0.0))

    h_m = binary_entropy(task_prior_m(model))
    if point.c >= h_m and point.d >= model.q_x:
        weight = 0.0
    elif point.d < rdc_breakpoint(model, point.c):
        weight = (model.q_x - point.d) / model.q_x
    else:
        weight = _classification_weight(model, point.c)
    weight = min(max(weight, 0.0), 1.0)

    return RdcResult(binary_entropy(model.q_x) * weight, SeedDistribution.identity_mix(weight))


def oneshot_drc(model: SourceModel, r: Bits, c: Bits) -> DrcResult:
    """
    One-shot distortion-rate-classification function D(R, C).

    The rate budget caps the identity weight at R / H_b(q_X) while the classification budget needs at
    least (H_b(m) - C) / (H_b(m) - H_b(q_S1)). Above the breakpoint C > drc_breakpoint(R) the distortion
    is q_X (H_b(q_X) - R) / H_b(q_X), and zero once R >= H_b(q_X). Below it no seed meets both budgets;
    the error then carries the rate the classification budget needs and the distortion reached there,
    q_X (C - H_b(q_S1)) / (H_b(m) - H_b(q_S1)).

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
        When r is negative or c is outside [0, 1].
    InfeasibleClassificationError
        When c < H_b(q_S1).
    InfeasibleProblemError
        When the rate budget is below classification_rate_floor(model, c).

    Returns
    -------
    DrcResult
        The distortion and the optimal seed (a, 0, 1-a, 0).
    """

    if r < 0:
        raise DomainError(f'rate budget r={r!r} must be nonnegative')
    c = check_probability(c, 'c')
    require_feasible(model, c)
    if model.q_x == 0:
        return DrcResult(0.0, SeedDistribution.identity_mix(0.0))

    h_x = binary_entropy(model.q_x)
    rate_weight = min(r / h_x, 1.0)
    classification_weight = min(max(_classification_weight(model, c), 0.0), 1.0)
    if classification_weight > rate_weight + ROUND_OFF_SLACK:
        required = h_x * classification_weight
        raise InfeasibleProblemError(
            f'rate budget {r:g} is below the {required:.6f} bits needed to meet classification budget {c:g}',
            certificate=required - r,
            details={'required_rate': required, 'boundary_distortion': model.q_x * (1 - classification_weight)},
        )

    return DrcResult(model.q_x * (1 - rate_weight), SeedDistribution.identity_mix(rate_weight))
