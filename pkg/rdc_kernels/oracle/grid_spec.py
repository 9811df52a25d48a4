"""
GridSpec fixes the resolution and seed of an oracle run.
"""

from dataclasses import dataclass

from ..errors import GridConfigurationError


@dataclass(frozen=True)
class GridSpec:
    """
    Attributes
    ----------
    resolution : int
        Points per axis, at least 2.
    seed : int
        Seed for randomized sampling and multi-starts.
    """

    resolution: int = 101
    seed: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.resolution, bool) or not isinstance(self.resolution, int) or self.resolution < 2:
            raise GridConfigurationError(f'grid resolution must be an integer >= 2, got {self.resolution!r}')
