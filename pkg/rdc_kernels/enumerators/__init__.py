from .solve_status import SolveStatus
from .step_rule import StepRule
from .rate_bound import RateBound
from .sweep_kind import SweepKind
from .verify_scope import VerifyScope
