"""
RepresentationChannel describes a discrete representation Z of the source X; DecoderProfile is a
decoder from Z back to a binary reconstruction.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..binary_info import Probability
from ..errors import ChannelValidationError, DomainError

MARGINAL_TOLERANCE = 1e-12


def _probability_vector(data: Mapping[str, Any], key: str) -> Tuple[float, ...]:
    if key not in data:
        raise ChannelValidationError(f'channel field "{key}" is missing')
    values = data[key]
    if not isinstance(values, (list, tuple)) or not values:
        raise ChannelValidationError(f'channel field "{key}" must be a non-empty list of numbers')

    checked = []
    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            raise ChannelValidationError(f'channel field "{key}"[{index}] is not a finite number: {value!r}')
        if not 0.0 <= value <= 1.0:
            raise ChannelValidationError(f'channel field "{key}"[{index}]={value} is outside [0, 1]')
        checked.append(float(value))

    return tuple(checked)


@dataclass(frozen=True)
class RepresentationChannel:
    """
    Representation Z with marginal p_Z(i) = q[i] and conditional p_{X|Z}(1|i) = eps[i].

    Attributes
    ----------
    q : Tuple[float, ...]
        Marginal of Z; sums to one within 1e-12.
    eps : Tuple[float, ...]
        Probability that X = 1 given each symbol of Z.

    Methods
    -------
    from_mapping()
        Builds a channel from a {"q": [...], "eps": [...]} mapping.
    from_json()
        Reads a channel from a JSON file.
    decoder_box()
        Admissible interval of every decoder parameter.
    """

    q: Tuple[float, ...]
    eps: Tuple[float, ...]

    def __post_init__(self) -> None:
        q = _probability_vector({'q': list(self.q)}, 'q')
        eps = _probability_vector({'eps': list(self.eps)}, 'eps')
        if len(q) != len(eps):
            raise ChannelValidationError(f'channel fields "q" and "eps" have lengths {len(q)} and {len(eps)}')
        if abs(sum(q) - 1.0) > MARGINAL_TOLERANCE:
            raise ChannelValidationError(f'channel field "q" sums to {sum(q)!r}, not 1')
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'eps', eps)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> 'RepresentationChannel':
        if not isinstance(data, Mapping):
            raise ChannelValidationError('channel must be a JSON object with "q" and "eps" arrays')

        return cls(_probability_vector(data, 'q'), _probability_vector(data, 'eps'))

    @classmethod
    def from_json(cls, path: Path) -> 'RepresentationChannel':
        """
        Reads a channel file.

        Parameters
        ----------
        path : Path
            File holding {"q": [...], "eps": [...]}.

        Raises
        ------
        ChannelValidationError
            When the file is not valid JSON, with the line and column, or a field is malformed.

        Returns
        -------
        RepresentationChannel
            The validated channel.
        """

        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as error:
            raise ChannelValidationError(f'{path}: line {error.lineno} column {error.colno}: {error.msg}') from error

        return cls.from_mapping(data)

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def q_array(self) -> NDArray[np.float64]:
        return np.asarray(self.q)

    @property
    def eps_array(self) -> NDArray[np.float64]:
        return np.asarray(self.eps)

    @property
    def q_x(self) -> Probability:
        """Derived P(X = 1)."""

        return float(self.q_array @ self.eps_array)

    def decoder_box(self) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        Admissible interval of every p_i. The open end at 1 - eps_i < 1/2 is closed; eps_i = 1/2 takes [1/2, 1].

        Returns
        -------
        Tuple[NDArray[np.float64], NDArray[np.float64]]
            Lower and upper ends.
        """

        keep = 1.0 - self.eps_array
        favours_zero = keep >= 0.5

        return np.where(favours_zero, keep, 0.0), np.where(favours_zero, 1.0, keep)


@dataclass(frozen=True)
class DecoderProfile:
    """
    Decoder with p[i] = P(reconstruction = 0 | Z = i). When the channel is given every p[i] must lie in
    its decoder box.
    """

    p: Tuple[float, ...]
    channel: Optional[RepresentationChannel] = None

    def __post_init__(self) -> None:
        p = np.array(self.p, dtype=np.float64)
        stray = (p < -MARGINAL_TOLERANCE) | (p > 1.0 + MARGINAL_TOLERANCE)
        if p.ndim != 1 or not np.all(np.isfinite(p)) or np.any(stray):
            raise DomainError(f'decoder parameters must be probabilities, got {self.p!r}')
        if self.channel is not None:
            if p.shape[0] != self.channel.n:
                raise DomainError(f'decoder has {p.shape[0]} parameters for {self.channel.n} symbols')
            lower, upper = self.channel.decoder_box()
            outside = np.flatnonzero((p < lower - MARGINAL_TOLERANCE) | (p > upper + MARGINAL_TOLERANCE))
            if outside.size:
                raise DomainError(f'decoder parameter p[{outside[0]}]={p[outside[0]]!r} is outside '
                                  f'[{lower[outside[0]]!r}, {upper[outside[0]]!r}]')
        object.__setattr__(self, 'p', tuple(float(value) for value in np.clip(p, 0.0, 1.0)))

    @property
    def array(self) -> NDArray[np.float64]:
        return np.asarray(self.p)
