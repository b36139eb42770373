from enum import IntEnum
from typing import Tuple

import numpy as np

from twp.model.ends import BIG, JUNCTION, SMALL, EndTag


class KernelCase(IntEnum):
    """The six regimes of the Poisson kernel estimates, named after the
    pieces the two points lie on (M: big end, N: small end, K: junction)."""
    KK = 1
    MK = 2
    NK = 3
    MN = 4
    MM = 5
    NN = 6


# CASE_TABLE[end_x, end_y] and whether the pair is the mirror of its case
CASE_TABLE = np.empty((3, 3), dtype=np.int8)
MIRROR_TABLE = np.zeros((3, 3), dtype=bool)
for (_x, _y), (_case, _mirror) in {
    (JUNCTION, JUNCTION): (KernelCase.KK, False),
    (BIG, JUNCTION): (KernelCase.MK, False),
    (JUNCTION, BIG): (KernelCase.MK, True),
    (SMALL, JUNCTION): (KernelCase.NK, False),
    (JUNCTION, SMALL): (KernelCase.NK, True),
    (BIG, SMALL): (KernelCase.MN, False),
    (SMALL, BIG): (KernelCase.MN, True),
    (BIG, BIG): (KernelCase.MM, False),
    (SMALL, SMALL): (KernelCase.NN, False),
}.items():
    CASE_TABLE[_x, _y] = _case
    MIRROR_TABLE[_x, _y] = _mirror


def dispatch(end_x: EndTag, end_y: EndTag) -> Tuple[KernelCase, bool]:
    """Kernel case of the pair :math:`(x, y)` and whether the pair is the
    mirror image of the case as stated (arguments swapped)."""
    cx, cy = EndTag.parse(end_x).code, EndTag.parse(end_y).code
    return KernelCase(int(CASE_TABLE[cx, cy])), bool(MIRROR_TABLE[cx, cy])


def case_codes(x_ends: np.ndarray, y_ends: np.ndarray) -> np.ndarray:
    """Vectorized :func:`dispatch`, broadcasting the end codes."""
    return CASE_TABLE[np.asarray(x_ends), np.asarray(y_ends)]
