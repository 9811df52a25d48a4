from .curve_sweep import CurveSweep
