"""
Boundary parameters of the sub-level set of the asymptotic rate and the linear constraints of the two
universality bound problems.

The variable is x = (p00|0, p01|0, p11|0, p00|1, p01|1, p11|1). Every row reads matrix.x + offset <= limit
and its left side is a probability:
    error_1     P(X != X1)                          <= C0
    error_2     P(X != X2)                          <= b
    crossover_1 q_S1 * P(X1 = 1 | X = 0)            <= q_S1 * C0      (lower-bound problem)
    forced_1    P(X1 = 1 | X = 0)                   <= 0              (upper-bound problem)
    crossover_2 q_S1 * P(X2 = 1 | X = 0)            <= H^-1(C_min)
    slice_0     p00|0 + p01|0 + p11|0               <= 1
    slice_1     p00|1 + p01|1 + p11|1               <= 1
where q_S1 * t is the binary convolution. The literal upper-bound variant bounds the convolved crossover
by zero, which is infeasible whenever q_S1 > 0.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..binary_info import Bits, Probability, ROUND_OFF_SLACK, SourceModel, binary_entropy, inverse_binary_entropy
from ..enumerators import RateBound
from ..errors import DomainError
from ..oneshot import asymptotic_b
from ..solver import LinearProgram


@dataclass(frozen=True)
class ThetaBoundary:
    """
    Attributes
    ----------
    c0 : Probability
        Distortion level with H(b) - H(c0) = r.
    c_min : Bits
        Classification level H(q_S1 * c0).
    b : Probability
        The b parameter of the asymptotic closed form.
    """

    c0: Probability
    c_min: Bits
    b: Probability


def theta_boundary(model: SourceModel, r: Bits) -> ThetaBoundary:
    """
    Solves H(b) - H(C0) = r and C_min = H(q_S1 + (1 - 2 q_S1) C0).

    Parameters
    ----------
    model : SourceModel
        Source model.
    r : Bits
        Rate level, in (0, H(b)].

    Raises
    ------
    DomainError
        When r is outside (0, H(b)]; the message names the interval.

    Returns
    -------
    ThetaBoundary
        The two boundary parameters and b.
    """

    b = asymptotic_b(model)
    h_b = binary_entropy(b)
    if not 0 < r <= h_b + ROUND_OFF_SLACK:
        raise DomainError(f'rate r={r!r} is outside the admissible interval (0, {h_b:.12g}]')

    c0 = inverse_binary_entropy(max(0.0, h_b - r))
    c_min = binary_entropy(model.q_s1 + (1 - 2 * model.q_s1) * c0)

    return ThetaBoundary(c0=c0, c_min=c_min, b=b)


@dataclass(frozen=True)
class ThetaConstraints:
    """
    Linear constraints of a bound problem in "matrix.x + offset <= limit" form plus the box [0, upper].

    Methods
    -------
    left_sides()
        Row probabilities at a point.
    residual()
        Largest violation of rows and box at a point.
    polytope()
        The constraints as a LinearProgram with a zero objective.
    """

    names: Tuple[str, ...]
    matrix: NDArray[np.float64]
    offsets: NDArray[np.float64]
    limits: NDArray[np.float64]
    upper: NDArray[np.float64]

    def left_sides(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.matrix @ np.asarray(x, dtype=np.float64) + self.offsets

    def residual(self, x: ArrayLike) -> float:
        x = np.asarray(x, dtype=np.float64)
        rows = self.left_sides(x) - self.limits

        return max(0.0, float(np.max(rows)), float(np.max(-x)), float(np.max(x - self.upper)))

    def polytope(self) -> LinearProgram:
        return LinearProgram(c=np.zeros(6), a=self.matrix, b=self.limits - self.offsets, lower=np.zeros(6),
                             upper=self.upper)


def theta_constraints(model: SourceModel, boundary: ThetaBoundary, bound: RateBound,
                      literal_upper: bool = False) -> ThetaConstraints:
    """
    Builds the constraint rows of the lower- or upper-bound problem.

    Parameters
    ----------
    model : SourceModel
        Source model; q stands for q_X and s for q_S1.
    boundary : ThetaBoundary
        Output of theta_boundary.
    bound : RateBound
        Which problem to build.
    literal_upper : bool
        Use the printed convolved form of the forced_1 row in the upper-bound problem.

    Returns
    -------
    ThetaConstraints
        Seven rows and the box.
    """

    q, s, c0 = model.q_x, model.q_s1, boundary.c0
    upper = np.ones(6)
    rows = [
        ('error_1', [-(1 - q), -(1 - q), 0, q, q, 0], 1 - q, c0),
        ('error_2', [0, 1 - q, 1 - q, 0, -q, -q], q, boundary.b),
    ]
    if bound is RateBound.LOWER:
        rows.append(('crossover_1', [-(1 - 2 * s), -(1 - 2 * s), 0, 0, 0, 0], 1 - s, s + (1 - 2 * s) * c0))
    elif literal_upper:
        rows.append(('forced_1', [-(1 - 2 * s), -(1 - 2 * s), 0, 0, 0, 0], 1 - s, 0.0))
    else:
        rows.append(('forced_1', [-1, -1, 0, 0, 0, 0], 1.0, 0.0))
        upper[2] = 0.0
    rows += [
        ('crossover_2', [0, 1 - 2 * s, 1 - 2 * s, 0, 0, 0], s, max(s, inverse_binary_entropy(boundary.c_min))),
        ('slice_0', [1, 1, 1, 0, 0, 0], 0.0, 1.0),
        ('slice_1', [0, 0, 0, 1, 1, 1], 0.0, 1.0),
    ]
    names, matrix, offsets, limits = zip(*rows)

    return ThetaConstraints(names=tuple(names), matrix=np.array(matrix, dtype=np.float64),
                            offsets=np.array(offsets, dtype=np.float64), limits=np.array(limits, dtype=np.float64),
                            upper=upper)
