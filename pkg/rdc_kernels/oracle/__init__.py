from .grid_spec import GridSpec
from .verification_check import VerificationCheck
from .scalar_oracles import scalar_lp_oracle_drc, scalar_lp_oracle_rdc
from .grid_oracles import dc_grid_oracle, four_map_enumeration_oracle
from .projected_gradient import projected_gradient_oracle
