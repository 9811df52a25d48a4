from .operating_point import DrcResult, OperatingPoint, RdcResult, SeedDistribution
from .oneshot import classification_rate_floor, drc_breakpoint, feasible, oneshot_drc, oneshot_rdc, rdc_breakpoint
from .asymptotic import asymptotic_b, asymptotic_drc, asymptotic_rdc
