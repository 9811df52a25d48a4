from .joint_decoder_pmf import JointDecoderPMF
from .information import cell_tangent, i_lb, i_lb_free, i_lb_gradient, i_lb_minorant, mutual_information_exact
from .theta import ThetaBoundary, ThetaConstraints, theta_boundary, theta_constraints
from .universal import RateBoundSolution, RatePenaltyBounds, UniversalSettings, rate_penalty_bounds, \
    rate_penalty_lower, rate_penalty_upper
