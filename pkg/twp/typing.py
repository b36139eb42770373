from typing import Literal, Sequence, Tuple, Union

from numpy import ndarray

ArrayLike = Union[ndarray, Sequence[float]]

HatConvention = Literal['hat-of-triple', 'triple-of-hat']
MirrorRule = Literal['by-end', 'average']

EndSplit = Literal[1, 2, 3]
PieceTuple = Tuple[int, int]
