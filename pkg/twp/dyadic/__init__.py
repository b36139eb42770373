from .cubes import (CarlesonBox, DyadicCube, Interval, Region, box, box3,
                    cell_span, dilate, enumerate_cubes, membership, triple)
from .maximal import DyadicMaximal, dyadic_maximal
from .whitney import OpenSet, WhitneyFamily, whitney

__all__ = [
    'DyadicCube',
    'CarlesonBox',
    'Interval',
    'Region',
    'OpenSet',
    'WhitneyFamily',
    'dilate',
    'triple',
    'box',
    'box3',
    'enumerate_cubes',
    'membership',
    'cell_span',
    'whitney',
    'DyadicMaximal',
    'dyadic_maximal',
]
