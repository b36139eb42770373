from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from twp import logger
from twp.model.ends import BIG, SMALL, EndTag
from twp.model.params import KernelParams

from .cubes import DyadicCube, cell_span

__all__ = ['OpenSet', 'WhitneyFamily', 'whitney']

_ENDS = (BIG, SMALL)


class OpenSet:
    """Finite union of half-open grid intervals on the two ends.

    The set is stored as one boolean mask per end over the :math:`2^L`
    finest dyadic cells.

    Args:
        params (KernelParams): Model parameters (extent and depth).
        masks (Mapping, optional): Cell masks keyed by end tag or code. Ends
            not given are empty. (default: :obj:`None`)
    """

    def __init__(self,
                 params: KernelParams,
                 masks: Optional[Mapping] = None):
        self.params = params
        self._masks = {}
        for end in _ENDS:
            mask = np.zeros(params.n_cells, dtype=bool)
            self._masks[end] = mask
        for end, mask in (masks or {}).items():
            code = EndTag.parse(end).code
            if code not in _ENDS:
                raise ValueError("Open sets live on the two ends only.")
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != (params.n_cells, ):
                raise ValueError(f"Cell mask must have {params.n_cells} "
                                 f"entries, got {mask.shape}.")
            self._masks[code] = mask.copy()
        for mask in self._masks.values():
            mask.setflags(write=False)

    def __repr__(self):
        return f"OpenSet({self.to_dict()})"

    def __eq__(self, other):
        return isinstance(other, OpenSet) and all(
            np.array_equal(self.mask(e), other.mask(e)) for e in _ENDS)

    @classmethod
    def from_intervals(cls, params: KernelParams,
                       intervals: Mapping[str, Iterable[Sequence[float]]],
                       atol: float = 1e-9) -> 'OpenSet':
        """Build an open set from grid-aligned intervals, e.g.
        :obj:`{"big": [[0, 0.5], [0.75, 1]]}`.

        Raises:
            ValueError: If an endpoint is not a multiple of the resolution
                :math:`S 2^{-L}` or lies outside :math:`[0, S]`.
        """
        masks = {}
        for end, items in intervals.items():
            code = EndTag.parse(end).code
            mask = np.zeros(params.n_cells, dtype=bool)
            for lo, hi in items:
                a, b = _to_cell(lo, params, atol), _to_cell(hi, params, atol)
                if not 0 <= a <= b <= params.n_cells:
                    raise ValueError(f"Interval [{lo}, {hi}) is not in "
                                     f"[0, {params.S}].")
                mask[a:b] = True
            masks[code] = mask
        return cls(params, masks)

    def mask(self, end) -> np.ndarray:
        return self._masks[EndTag.parse(end).code]

    @property
    def is_empty(self) -> bool:
        return not any(m.any() for m in self._masks.values())

    def contains_span(self, end, span: Tuple[int, int]) -> bool:
        a, b = span
        return bool(self.mask(end)[a:b].all())

    def to_intervals(self) -> Dict[str, List[List[float]]]:
        """Maximal runs of cells as :obj:`[lo, hi]` pairs per end."""
        out = {}
        res = self.params.resolution
        for end in _ENDS:
            mask = self._masks[end].astype(np.int8)
            edges = np.diff(np.concatenate([[0], mask, [0]]))
            starts, stops = np.flatnonzero(edges == 1), np.flatnonzero(
                edges == -1)
            out[EndTag.from_code(end).value] = [[a * res, b * res]
                                                for a, b in zip(starts, stops)]
        return out

    def to_dict(self) -> dict:
        return self.to_intervals()


def _to_cell(value: float, params: KernelParams, atol: float) -> int:
    cell = float(value) / params.resolution
    if abs(cell - round(cell)) > atol:
        raise ValueError(f"Endpoint {value} is not on the grid of "
                         f"resolution {params.resolution}.")
    return int(round(cell))


@dataclass
class WhitneyFamily:
    """Whitney family of an open set: maximal dyadic cubes :math:`I` with
    :math:`3I \\subset \\Omega` and :math:`5I \\not\\subset \\Omega`.

    Args:
        omega (OpenSet): The decomposed open set.
        cubes (list): The members of the family.
        degenerate (list): Ends on which no cube satisfies
            :math:`5I \\not\\subset \\Omega` and the maximal cubes with
            :math:`3I \\subset \\Omega` were returned instead.
    """
    omega: OpenSet
    cubes: List[DyadicCube]
    degenerate: List[EndTag] = field(default_factory=list)

    def __len__(self):
        return len(self.cubes)

    def __iter__(self):
        return iter(self.cubes)

    def cells(self, cube: DyadicCube, factor: int = 1) -> Tuple[int, int]:
        return cell_span(cube, self.omega.params, factor)

    def covered(self, end) -> np.ndarray:
        """Cells of :obj:`end` covered by the members."""
        code = EndTag.parse(end).code
        mask = np.zeros(self.omega.params.n_cells, dtype=bool)
        for cube in self.cubes:
            if cube.end.code == code:
                a, b = self.cells(cube)
                mask[a:b] = True
        return mask

    def multiplicity(self) -> int:
        """Largest number of triples :math:`3I` overlapping at one cell."""
        best = 0
        for end in _ENDS:
            count = np.zeros(self.omega.params.n_cells, dtype=int)
            for cube in self.cubes:
                if cube.end.code == end:
                    a, b = self.cells(cube, 3)
                    count[a:b] += 1
            best = max(best, int(count.max(initial=0)))
        return best

    def to_dict(self) -> dict:
        return dict(omega=self.omega.to_dict(),
                    cubes=[c.id for c in self.cubes],
                    intervals=[c.interval.to_dict() for c in self.cubes],
                    degenerate=[e.value for e in self.degenerate],
                    multiplicity=self.multiplicity())


def _select(omega: OpenSet, cube: DyadicCube, params: KernelParams,
            strict: bool, out: List[DyadicCube]):
    # top-down: the first cube of a branch satisfying the rule is maximal
    triple_in = omega.contains_span(cube.end, cell_span(cube, params, 3))
    if triple_in and (not strict or not omega.contains_span(
            cube.end, cell_span(cube, params, 5))):
        out.append(cube)
        return
    for child in cube.children(params.L):
        _select(omega, child, params, strict, out)


def whitney(omega: OpenSet) -> WhitneyFamily:
    """Whitney decomposition of an open set.

    On each end the family collects the maximal dyadic cubes :math:`I` with
    :math:`3I \\subset \\Omega` and :math:`5I \\not\\subset \\Omega`
    (dilations clipped to :math:`[0, S]`). When :math:`\\Omega` is nonempty
    on an end but no cube qualifies there (e.g., :math:`\\Omega` is the whole
    end), the maximal cubes with :math:`3I \\subset \\Omega` are returned and
    the end is marked as degenerate.

    Args:
        omega (OpenSet): The open set.

    Returns:
        WhitneyFamily: The family, pairwise disjoint.
    """
    params = omega.params
    cubes, degenerate = [], []
    for end in (EndTag.BIG, EndTag.SMALL):
        if not omega.mask(end).any():
            continue
        selected = []
        _select(omega, DyadicCube.top(params, end), params, True, selected)
        if not selected:
            _select(omega, DyadicCube.top(params, end), params, False,
                    selected)
            degenerate.append(end)
            logger.debug(f"Degenerate Whitney family on the {end.value} "
                         f"end: no cube has 5I outside the open set.")
        cubes.extend(selected)
    return WhitneyFamily(omega, cubes, degenerate)
