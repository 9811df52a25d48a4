from .representation_channel import DecoderProfile, RepresentationChannel
from .dc_region import BoundaryPoint, classification_crossover, dc_boundary_curve, dc_lower_boundary, dc_problem, \
    decoder_box, knapsack_boundary, map_decoder_distortion
