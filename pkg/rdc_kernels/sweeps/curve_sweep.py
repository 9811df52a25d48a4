"""
CurveSweep carries the samples of one tradeoff curve together with the parameters that generated it.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..enumerators import SweepKind
from ..errors import DomainError


@dataclass(frozen=True)
class CurveSweep:
    """
    Ordered (x, y) samples of a curve.

    Attributes
    ----------
    kind : SweepKind
        Which tradeoff the samples describe.
    params : Dict[str, Any]
        Generating parameters, emitted alongside the samples.
    samples : Tuple[Tuple[float, float], ...]
        Samples with strictly increasing, finite abscissae and finite ordinates.
    infeasible_samples : int
        Number of requested abscissae left out because the problem was infeasible there.
    """

    kind: SweepKind
    params: Dict[str, Any]
    samples: Tuple[Tuple[float, float], ...] = ()
    infeasible_samples: int = field(default=0)

    def __post_init__(self) -> None:
        samples = tuple((float(x), float(y)) for x, y in self.samples)
        for x, y in samples:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DomainError(f'sweep sample ({x!r}, {y!r}) is not finite')
        if any(later[0] <= earlier[0] for earlier, later in zip(samples, samples[1:])):
            raise DomainError('sweep abscissae must be strictly increasing')
        if self.infeasible_samples < 0:
            raise DomainError('infeasible sample count must be nonnegative')
        object.__setattr__(self, 'samples', samples)

    @property
    def xs(self) -> Tuple[float, ...]:
        return tuple(x for x, _ in self.samples)

    @property
    def ys(self) -> Tuple[float, ...]:
        return tuple(y for _, y in self.samples)
