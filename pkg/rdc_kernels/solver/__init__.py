from .linear_program import LinearProgram, SolveReport, RESIDUAL_TOLERANCE
from .simplex import DenseSimplex, solve_lp
from .block_minorant import BlockMinorant
from .conditional_gradient import ConditionalGradient, DEFAULT_SEED, minimize_convex
