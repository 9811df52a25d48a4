"""
Operating points and the seed distributions over the four deterministic binary maps.
"""

from dataclasses import dataclass
from typing import NamedTuple

from ..binary_info import Bits, Probability, ROUND_OFF_SLACK, SourceModel, binary_entropy, check_probability, \
    task_prior_m
from ..errors import DomainError


@dataclass(frozen=True)
class OperatingPoint:
    """
    A (distortion, classification) requirement pair.

    Attributes
    ----------
    d : Probability
        Hamming distortion budget.
    c : Bits
        Classification budget, an upper bound on H(S | reconstruction).
    """

    d: Probability
    c: Bits

    def __post_init__(self) -> None:
        object.__setattr__(self, 'd', check_probability(self.d, 'd'))
        object.__setattr__(self, 'c', check_probability(self.c, 'c'))


@dataclass(frozen=True)
class SeedDistribution:
    """
    Weights of the common-randomness seed over the maps x -> x, x -> 1-x, x -> 0 and x -> 1.

    Methods
    -------
    rate()
        Conditional entropy of the reconstruction given the seed.
    distortion()
        Expected Hamming distortion.
    classification()
        Residual task entropy H(S | reconstruction, seed).
    """

    p1: Probability
    p2: Probability
    p3: Probability
    p4: Probability

    def __post_init__(self) -> None:
        weights = (self.p1, self.p2, self.p3, self.p4)
        if min(weights) < 0 or abs(sum(weights) - 1) > ROUND_OFF_SLACK:
            raise DomainError(f'seed weights {weights} are not a probability vector')

    @classmethod
    def identity_mix(cls, a: float) -> 'SeedDistribution':
        """Seed (a, 0, 1-a, 0): the source with probability a, the constant 0 otherwise."""

        return cls(a, 0.0, 1.0 - a, 0.0)

    def rate(self, model: SourceModel) -> Bits:
        return binary_entropy(model.q_x) * (self.p1 + self.p2)

    def distortion(self, model: SourceModel) -> Probability:
        return self.p2 + model.q_x * self.p3 + (1 - model.q_x) * self.p4

    def classification(self, model: SourceModel) -> Bits:
        informative = self.p1 + self.p2

        return informative * binary_entropy(model.q_s1) + (1 - informative) * binary_entropy(task_prior_m(model))


class RdcResult(NamedTuple):
    rate: Bits
    seed: SeedDistribution


class DrcResult(NamedTuple):
    distortion: Probability
    seed: SeedDistribution
