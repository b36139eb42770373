from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

import twp
from twp.model.ends import EndTag
from twp.model.params import KernelParams
from twp.typing import HatConvention

__all__ = [
    'DyadicCube', 'Interval', 'Region', 'CarlesonBox', 'dilate', 'triple',
    'box', 'box3', 'enumerate_cubes', 'membership', 'cell_span'
]


@dataclass(frozen=True)
class Interval:
    """Half-open interval :math:`[lo, hi)` on the profile of one end, closed
    on the right when it reaches the extent :math:`S`. An interval with
    :obj:`end=None` is the whole manifold."""
    end: Optional[EndTag]
    lo: float
    hi: float
    extent: float

    def contains(self, ends: np.ndarray, s: np.ndarray) -> np.ndarray:
        ends, s = np.asarray(ends), np.asarray(s, dtype=float)
        if self.end is None:
            return np.ones(np.broadcast(ends, s).shape, dtype=bool)
        upper = s < self.hi
        if self.hi >= self.extent:
            upper = s <= self.hi
        return (ends == self.end.code) & (s >= self.lo) & upper

    def to_dict(self) -> dict:
        return dict(end=None if self.end is None else self.end.value,
                    lo=self.lo,
                    hi=self.hi)


@dataclass(frozen=True)
class Region:
    """Product region :math:`E \\times [0, h]` of the upper half space."""
    base: Interval
    height: float

    def contains(self, ends: np.ndarray, s: np.ndarray,
                 t: np.ndarray) -> np.ndarray:
        return self.base.contains(ends, s) & (np.asarray(t) <= self.height)


@dataclass(frozen=True)
class DyadicCube:
    r"""Dyadic interval :math:`[jS2^{-k}, (j+1)S2^{-k})` on one end.

    Cubes on the same end are either nested or disjoint. The root cube
    (:obj:`end=None`, :obj:`level=-1`) is the whole manifold, of length
    :math:`2S`; its children are the top cubes of the two ends and it is the
    only cube containing the junction.

    Args:
        end (EndTag, optional): End of the cube, :obj:`None` for the root.
        level (int): Level :math:`k \in [0, L]` (:obj:`-1` for the root).
        index (int): Position :math:`0 \leq j < 2^k` along the end.
        extent (float): Extent :math:`S` of the ends.
    """
    end: Optional[EndTag]
    level: int
    index: int
    extent: float

    def __post_init__(self):
        if self.end is None:
            if self.level != -1 or self.index != 0:
                raise ValueError("The root cube has level -1 and index 0.")
        elif not 0 <= self.index < 2**self.level:
            raise ValueError(f"Index {self.index} out of range at level "
                             f"{self.level}.")

    def __str__(self):
        return self.id

    @classmethod
    def root(cls, params: KernelParams) -> 'DyadicCube':
        return cls(None, -1, 0, params.S)

    @classmethod
    def top(cls, params: KernelParams, end: EndTag) -> 'DyadicCube':
        return cls(EndTag.parse(end), 0, 0, params.S)

    @classmethod
    def parse(cls, value: str, params: KernelParams) -> 'DyadicCube':
        """Inverse of :attr:`id`."""
        if value == 'root':
            return cls.root(params)
        end, level, index = value.split(':')
        return cls(EndTag.parse(end), int(level), int(index), params.S)

    @property
    def id(self) -> str:
        if self.is_root:
            return 'root'
        return f'{self.end.value}:{self.level}:{self.index}'

    @property
    def is_root(self) -> bool:
        return self.end is None

    @property
    def length(self) -> float:
        if self.is_root:
            return 2 * self.extent
        return self.extent * 2.**-self.level

    @property
    def left(self) -> float:
        return 0. if self.is_root else self.index * self.length

    @property
    def right(self) -> float:
        return self.extent if self.is_root else (self.index + 1) * self.length

    @property
    def interval(self) -> Interval:
        return Interval(self.end, self.left, self.right, self.extent)

    @property
    def parent(self) -> Optional['DyadicCube']:
        if self.is_root:
            return None
        if self.level == 0:
            return DyadicCube(None, -1, 0, self.extent)
        return DyadicCube(self.end, self.level - 1, self.index // 2,
                          self.extent)

    def children(self, depth: Optional[int] = None) -> List['DyadicCube']:
        """Children of the cube, none below level :obj:`depth`."""
        if depth is not None and self.level >= depth:
            return []
        if self.is_root:
            return [
                DyadicCube(end, 0, 0, self.extent)
                for end in (EndTag.BIG, EndTag.SMALL)
            ]
        return [
            DyadicCube(self.end, self.level + 1, 2 * self.index + i,
                       self.extent) for i in (0, 1)
        ]

    def ancestors(self) -> List['DyadicCube']:
        """Proper ancestors, from the parent up to the root."""
        out, cube = [], self.parent
        while cube is not None:
            out.append(cube)
            cube = cube.parent
        return out

    def neighbors(self) -> List['DyadicCube']:
        """The cubes of the same length composing :math:`3I` (the cube
        itself and its left and right neighbors when they exist)."""
        if self.is_root:
            return [self]
        return [
            DyadicCube(self.end, self.level, j, self.extent)
            for j in (self.index - 1, self.index, self.index + 1)
            if 0 <= j < 2**self.level
        ]

    def contains(self, ends: np.ndarray, s: np.ndarray) -> np.ndarray:
        return self.interval.contains(ends, s)

    def contains_cube(self, other: 'DyadicCube') -> bool:
        if self.is_root:
            return True
        if other.is_root or other.end is not self.end:
            return False
        if other.level < self.level:
            return False
        return other.index >> (other.level - self.level) == self.index


def dilate(cube: DyadicCube, factor: float) -> Interval:
    """Concentric dilation of :obj:`cube` by :obj:`factor`, clipped to the
    profile :math:`[0, S]` of its end."""
    if cube.is_root:
        return cube.interval
    center = 0.5 * (cube.left + cube.right)
    half = 0.5 * factor * cube.length
    return Interval(cube.end, max(0., center - half),
                    min(cube.extent, center + half), cube.extent)


def triple(cube: DyadicCube) -> Interval:
    """The interval :math:`3I`."""
    return dilate(cube, 3)


@dataclass(frozen=True)
class CarlesonBox:
    r"""Carleson box :math:`\hat{I} = I \times [0, \ell(I)]`."""
    base: DyadicCube

    @property
    def height(self) -> float:
        return self.base.length

    @property
    def region(self) -> Region:
        return Region(self.base.interval, self.height)

    def contains(self, ends: np.ndarray, s: np.ndarray,
                 t: np.ndarray) -> np.ndarray:
        return self.region.contains(ends, s, t)


def box(cube: DyadicCube) -> CarlesonBox:
    return CarlesonBox(cube)


def box3(cube: DyadicCube,
         convention: Optional[HatConvention] = None) -> Region:
    r"""Region of the forward testing condition.

    With :obj:`'hat-of-triple'` this is the Carleson box of the tripled cube,
    :math:`3I \times [0, 3\ell(I)]`; with :obj:`'triple-of-hat'` it is the
    concentric triple of :math:`\hat{I}` in both directions, intersected with
    the upper half space, i.e., :math:`3I \times [0, 2\ell(I)]`.

    Args:
        cube (DyadicCube): The cube :math:`I`.
        convention (str, optional): Either :obj:`'hat-of-triple'` or
            :obj:`'triple-of-hat'`. If :obj:`None`, then
            :obj:`twp.config.hat_convention` is used. (default: :obj:`None`)
    """
    convention = convention or twp.config.hat_convention
    if convention == 'hat-of-triple':
        height = 3 * cube.length
    elif convention == 'triple-of-hat':
        height = 2 * cube.length
    else:
        raise ValueError(f"Unknown hat convention '{convention}'.")
    return Region(triple(cube), height)


def enumerate_cubes(params: KernelParams,
                    include_root: bool = True,
                    ends: Sequence[EndTag] = (EndTag.BIG, EndTag.SMALL),
                    depth: Optional[int] = None) -> List[DyadicCube]:
    """All dyadic cubes down to level :obj:`depth` (default :math:`L`), in a
    fixed order: root first, then each end by increasing level and index."""
    depth = params.L if depth is None else depth
    cubes = [DyadicCube.root(params)] if include_root else []
    for end in ends:
        end = EndTag.parse(end)
        for level in range(depth + 1):
            cubes.extend(
                DyadicCube(end, level, j, params.S)
                for j in range(2**level))
    return cubes


def membership(regions: Iterable, ends: np.ndarray, s: np.ndarray,
               t: Optional[np.ndarray] = None) -> np.ndarray:
    """Boolean matrix whose row :obj:`i` marks the atoms lying in the
    :obj:`i`-th cube, interval or region (heights are used only for
    regions)."""
    rows = []
    for region in regions:
        if isinstance(region, (Region, CarlesonBox)):
            rows.append(region.contains(ends, s, t))
        else:
            rows.append(region.contains(ends, s))
    if not rows:
        return np.zeros((0, len(np.asarray(s))), dtype=bool)
    return np.stack(rows)


def cell_span(cube: DyadicCube, params: KernelParams,
              factor: int = 1) -> Tuple[int, int]:
    """Range :math:`[a, b)` of finest cells covered by the concentric
    dilation of :obj:`cube` by an odd integer :obj:`factor`, clipped to the
    end."""
    if cube.is_root:
        raise ValueError("The root cube spans both ends.")
    width = 2**(params.L - cube.level)
    pad = (factor - 1) // 2 * width
    start = cube.index * width
    return max(0, start - pad), min(params.n_cells, start + width + pad)
