"""
Piecewise-linear minorants of block-separable, positively homogeneous convex objectives and the lower
bound they certify over a polytope.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .linear_program import LinearProgram
from .simplex import solve_lp
from ..errors import LinearSubproblemError, MalformedProblemError


@dataclass(frozen=True)
class BlockMinorant:
    """
    Minorant sum_k max_j cuts[k][j] . x[blocks[k]] of an objective whose blocks are positively
    homogeneous and convex, so that every row of cuts[k] is a subgradient of block k.

    Attributes
    ----------
    blocks : Tuple[Tuple[int, ...], ...]
        Coordinates of each block.
    cuts : Tuple[NDArray[np.float64], ...]
        Per block, an array of shape (cuts, block size).

    Methods
    -------
    evaluate()
        Value of the minorant at a point.
    lifted_program()
        Linear program over (x, z) whose minimum is the minimum of the minorant over a polytope.
    lower_bound()
        Minimum of the minorant over a polytope and a point attaining it.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    cuts: Tuple[NDArray[np.float64], ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.cuts):
            raise MalformedProblemError(f'{len(self.blocks)} blocks but {len(self.cuts)} cut sets')

        cuts = []
        for block, block_cuts in zip(self.blocks, self.cuts):
            block_cuts = np.array(block_cuts, dtype=np.float64)
            if block_cuts.ndim != 2 or block_cuts.shape[0] == 0 or block_cuts.shape[1] != len(block):
                raise MalformedProblemError(f'cuts of block {block} must have shape (cuts, {len(block)})')
            if not np.all(np.isfinite(block_cuts)):
                raise MalformedProblemError('cuts must contain finite values only')
            block_cuts.flags.writeable = False
            cuts.append(block_cuts)

        object.__setattr__(self, 'blocks', tuple(tuple(int(i) for i in block) for block in self.blocks))
        object.__setattr__(self, 'cuts', tuple(cuts))

    def evaluate(self, x: ArrayLike) -> float:
        x = np.asarray(x, dtype=np.float64)

        return float(sum(np.max(cuts @ x[list(block)]) for block, cuts in zip(self.blocks, self.cuts)))

    def lifted_program(self, polytope: LinearProgram) -> LinearProgram:
        """
        Epigraph form of the minorant over a polytope: minimize sum z_k subject to the polytope rows on x
        and cut . x[block] - z_k <= 0 for every cut of every block.

        Parameters
        ----------
        polytope : LinearProgram
            Feasible region of x; its objective vector is ignored.

        Returns
        -------
        LinearProgram
            Program over n + len(blocks) variables. The box of z_k spans the range of the minorant
            block over the box of x.
        """

        n, count = polytope.n, len(self.blocks)
        rows = [np.hstack([polytope.a, np.zeros((polytope.a.shape[0], count))])]
        z_lower, z_upper = np.zeros(count), np.zeros(count)
        for k, (block, cuts) in enumerate(zip(self.blocks, self.cuts)):
            block = list(block)
            lower, upper = polytope.lower[block], polytope.upper[block]
            lowest = np.minimum(cuts * lower, cuts * upper).sum(axis=1)
            highest = np.maximum(cuts * lower, cuts * upper).sum(axis=1)
            z_lower[k], z_upper[k] = np.max(lowest), np.max(highest)

            epigraph = np.zeros((cuts.shape[0], n + count))
            epigraph[:, block] = cuts
            epigraph[:, n + k] = -1.0
            rows.append(epigraph)

        a = np.vstack(rows)
        b = np.concatenate([polytope.b, np.zeros(a.shape[0] - polytope.a.shape[0])])

        return LinearProgram(c=np.concatenate([np.zeros(n), np.ones(count)]), a=a, b=b,
                             lower=np.concatenate([polytope.lower, z_lower]),
                             upper=np.concatenate([polytope.upper, z_upper]))

    def lower_bound(self, polytope: LinearProgram) -> Tuple[float, NDArray[np.float64]]:
        """
        Minimum of the minorant over a polytope, a lower bound on the minimum of the objective.

        Parameters
        ----------
        polytope : LinearProgram
            Nonempty feasible region.

        Raises
        ------
        LinearSubproblemError
            When the lifted program is not solved to optimality.

        Returns
        -------
        Tuple[float, NDArray[np.float64]]
            The bound and a point of the polytope attaining it.
        """

        report = solve_lp(self.lifted_program(polytope))
        if not report.optimal:
            raise LinearSubproblemError(f'lifted minorant program ended with status {report.status.value}',
                                        status=report.status)

        point = np.clip(report.x[:polytope.n], polytope.lower, polytope.upper)

        return min(float(report.objective), self.evaluate(point)), point
