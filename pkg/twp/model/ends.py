from enum import Enum
from typing import Union

import numpy as np


class EndTag(Enum):
    """The three pieces of the model manifold.

    :obj:`BIG` is the end modelled on :math:`\\mathbb{R}^m`, :obj:`SMALL` the
    end modelled on :math:`\\mathbb{R}^n \\times S^{m-n}` and :obj:`JUNCTION`
    the compact set :math:`K` collapsed to a single point.
    """
    BIG = 'big'
    SMALL = 'small'
    JUNCTION = 'junction'

    @property
    def code(self) -> int:
        """Integer code used in the array representation of measures."""
        return _CODES[self]

    @property
    def is_end(self) -> bool:
        return self is not EndTag.JUNCTION

    @classmethod
    def parse(cls, value: Union[str, int, 'EndTag']) -> 'EndTag':
        if isinstance(value, EndTag):
            return value
        if isinstance(value, (int, np.integer)):
            return _FROM_CODE[int(value)]
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"'{value}' is not a valid end tag, use one of "
                             f"{[e.value for e in cls]}.")

    @classmethod
    def from_code(cls, code: int) -> 'EndTag':
        return _FROM_CODE[int(code)]


_CODES = {EndTag.BIG: 0, EndTag.SMALL: 1, EndTag.JUNCTION: 2}
_FROM_CODE = {v: k for k, v in _CODES.items()}

BIG = EndTag.BIG.code
SMALL = EndTag.SMALL.code
JUNCTION = EndTag.JUNCTION.code
