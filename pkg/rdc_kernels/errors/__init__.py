from .domain_error import DomainError
from .degenerate_model_error import DegenerateModelError
from .channel_validation_error import ChannelValidationError
from .malformed_problem_error import MalformedProblemError
from .grid_configuration_error import GridConfigurationError
from .infeasible_problem_error import InfeasibleProblemError
from .infeasible_classification_error import InfeasibleClassificationError
from .convergence_error import ConvergenceError
from .solver_disagreement_error import SolverDisagreementError
from .configuration_error import ConfigurationError
from .linear_subproblem_error import LinearSubproblemError
