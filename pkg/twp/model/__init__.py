from .ends import EndTag
from .geometry import (ball_volume, distance, doubling_ratios, norm_of,
                       pairwise_distance)
from .measures import DiscreteMeasure, UpperHalfMeasure, restrict
from .params import KernelParams
from .point import Point

__all__ = [
    'EndTag',
    'KernelParams',
    'Point',
    'DiscreteMeasure',
    'UpperHalfMeasure',
    'distance',
    'pairwise_distance',
    'norm_of',
    'ball_volume',
    'doubling_ratios',
    'restrict',
]
