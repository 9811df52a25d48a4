"""
JointDecoderPMF is the conditional pmf p(x1, x2 | x) of two binary reconstructions given the source bit.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..binary_info import Probability, ROUND_OFF_SLACK
from ..errors import DomainError

FREE_CELLS = ((0, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class JointDecoderPMF:
    """
    Conditional pmf with table[k, i, j] = P(X1 = i, X2 = j | X = k).

    The six free coordinates are p00|0, p01|0, p11|0, p00|1, p01|1, p11|1; p10|k closes each slice.
    Entries within 1e-12 of zero are stored as exact zeros.

    Attributes
    ----------
    table : NDArray[np.float64]
        Shape (2, 2, 2); each slice table[k] sums to one.

    Methods
    -------
    from_free()
        Builds the pmf from its six free coordinates.
    error_probability()
        P(X != X_d) for one of the two reconstructions.
    one_crossover()
        P(X_d = 1 | X = 0).
    """

    table: NDArray[np.float64]

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.float64)
        if table.shape != (2, 2, 2):
            raise DomainError(f'joint decoder table must have shape (2, 2, 2), got {table.shape}')
        if not np.all(np.isfinite(table)) or np.any(table < -ROUND_OFF_SLACK) or np.any(table > 1 + ROUND_OFF_SLACK):
            raise DomainError('joint decoder entries must lie in [0, 1]')
        table = np.where(np.abs(table) < ROUND_OFF_SLACK, 0.0, np.clip(table, 0.0, 1.0))
        sums = table.sum(axis=(1, 2))
        if np.any(np.abs(sums - 1.0) > ROUND_OFF_SLACK):
            raise DomainError(f'joint decoder slices sum to {sums.tolist()}, not 1')
        table.flags.writeable = False
        object.__setattr__(self, 'table', table)

    @classmethod
    def from_free(cls, coords: ArrayLike) -> 'JointDecoderPMF':
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (6,):
            raise DomainError(f'expected six free coordinates, got shape {coords.shape}')
        coords = np.where(np.abs(coords) < ROUND_OFF_SLACK, 0.0, coords)

        table = np.zeros((2, 2, 2))
        for k, block in enumerate((coords[:3], coords[3:])):
            for (i, j), value in zip(FREE_CELLS, block):
                table[k, i, j] = value
            closing = 1.0 - float(block.sum())
            table[k, 1, 0] = 0.0 if abs(closing) < ROUND_OFF_SLACK else closing

        return cls(table)

    @property
    def free(self) -> NDArray[np.float64]:
        return np.array([self.table[k, i, j] for k in (0, 1) for i, j in FREE_CELLS])

    def _marginal(self, decoder: int) -> NDArray[np.float64]:
        if decoder not in (1, 2):
            raise DomainError(f'decoder must be 1 or 2, got {decoder!r}')

        return self.table.sum(axis=2) if decoder == 1 else self.table.sum(axis=1)

    def one_crossover(self, decoder: int) -> Probability:
        return float(self._marginal(decoder)[0, 1])

    def error_probability(self, q_x: Probability, decoder: int) -> Probability:
        marginal = self._marginal(decoder)

        return float((1 - q_x) * marginal[0, 1] + q_x * marginal[1, 0])
