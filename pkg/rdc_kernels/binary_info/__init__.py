from .source_model import Bits, Probability, ROUND_OFF_SLACK, SourceModel, check_probability
from .binary_info import binary_entropy, binary_entropy_array, inverse_binary_entropy, binary_convolution, \
    task_prior_m, entropy_gap, is_feasible, require_feasible, mgl_threshold
