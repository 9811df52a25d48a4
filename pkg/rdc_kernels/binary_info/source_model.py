"""
SourceModel is the Bernoulli pair (q_X, q_S1) describing a binary source X and its task S = X xor S1.
"""

from dataclasses import dataclass

from ..errors import DegenerateModelError, DomainError

Probability = float
Bits = float

ROUND_OFF_SLACK = 1e-12


def check_probability(value: float, name: str, upper: float = 1.0) -> Probability:
    """
    Validates that a value is a probability in [0, upper].

    Values outside the interval by at most `ROUND_OFF_SLACK` are clamped onto it.

    Parameters
    ----------
    value : float
        Value to validate.
    name : str
        Name of the quantity, used in the error message.
    upper : float
        Upper end of the admissible interval.

    Raises
    ------
    DomainError
        When the value is not a finite number in [0, upper].

    Returns
    -------
    Probability
        The validated value.
    """

    value = float(value)
    if not -ROUND_OFF_SLACK <= value <= upper + ROUND_OFF_SLACK:
        raise DomainError(f'{name}={value!r} is outside [0, {upper}]')

    return min(max(value, 0.0), upper)


@dataclass(frozen=True)
class SourceModel:
    """
    Bernoulli source model.

    Attributes
    ----------
    q_x : Probability
        P(X = 1), restricted to [0, 1/2].
    q_s1 : Probability
        P(S1 = 1), restricted to [0, 1/2).
    """

    q_x: Probability
    q_s1: Probability

    def __post_init__(self) -> None:
        object.__setattr__(self, 'q_x', check_probability(self.q_x, 'q_x', upper=0.5))
        q_s1 = check_probability(self.q_s1, 'q_s1', upper=0.5)
        if q_s1 == 0.5:
            raise DegenerateModelError('q_s1=0.5 decouples the task from the source')
        object.__setattr__(self, 'q_s1', q_s1)

    @property
    def q_s(self) -> Probability:
        """P(S = 1), the binary convolution of q_X and q_S1."""

        return self.q_x * (1 - self.q_s1) + self.q_s1 * (1 - self.q_x)
