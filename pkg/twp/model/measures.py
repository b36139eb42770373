from typing import List, Mapping, Sequence, Tuple, Union

import numpy as np

from twp.errors import InstanceFormatError
from twp.typing import ArrayLike

from .ends import JUNCTION, EndTag
from .params import KernelParams
from .point import Point

EndLike = Union[EndTag, str, int]


def _as_codes(ends) -> np.ndarray:
    ends = np.asarray(ends)
    if ends.dtype.kind in 'iu':
        codes = ends.astype(np.int8)
    else:
        codes = np.array([EndTag.parse(e).code for e in ends.ravel()],
                         dtype=np.int8)
    if codes.size and (codes.min() < 0 or codes.max() > JUNCTION):
        raise ValueError("End codes must be in {0, 1, 2}.")
    return codes.ravel()


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class DiscreteMeasure:
    r"""Finite atomic measure :math:`\sigma` on the manifold.

    Atoms are stored column-wise as read-only arrays of end codes, profile
    coordinates and weights. Atoms with :math:`s = 0` are moved to the
    junction.

    Args:
        ends (Sequence): End tag (or code) of each atom.
        s (Sequence): Profile coordinate of each atom.
        weights (Sequence): Positive weight of each atom.
    """
    _name = 'sigma'
    _fields = ('ends', 's', 'weights')

    def __init__(self, ends: Sequence[EndLike], s: ArrayLike,
                 weights: ArrayLike):
        ends = _as_codes(ends).copy()
        s = np.array(s, dtype=float).ravel()
        weights = np.array(weights, dtype=float).ravel()
        if not len(ends) == len(s) == len(weights):
            raise ValueError("Atom arrays must have the same length.")
        if np.any(~np.isfinite(s)) or np.any(s < 0):
            raise ValueError("Profile coordinates must be finite and >= 0.")
        if np.any(~np.isfinite(weights)) or np.any(weights <= 0):
            raise ValueError("Weights must be finite and positive.")
        s[ends == JUNCTION] = 0.
        ends[s == 0] = JUNCTION
        self._ends = _frozen(ends)
        self._s = _frozen(s)
        self._weights = _frozen(weights)
        self._check_distinct()

    def _keys(self) -> np.ndarray:
        return np.column_stack([self._ends.astype(float), self._s])

    def _check_distinct(self):
        if len(self) > 1:
            n_unique = np.unique(self._keys(), axis=0).shape[0]
            if n_unique != len(self):
                raise ValueError(f"{type(self).__name__} has "
                                 f"{len(self) - n_unique} repeated atoms.")

    def __len__(self) -> int:
        return len(self._weights)

    def __repr__(self):
        counts = {e.value: int(np.sum(self._ends == e.code)) for e in EndTag}
        return f"{type(self).__name__}(atoms={len(self)}, " \
               f"mass={self.mass:.4g}, {counts})"

    @property
    def ends(self) -> np.ndarray:
        return self._ends

    @property
    def s(self) -> np.ndarray:
        return self._s

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def mass(self) -> float:
        return float(self._weights.sum())

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    @property
    def points(self) -> List[Point]:
        return [
            Point(EndTag.from_code(e), s) for e, s in zip(self._ends, self._s)
        ]

    @property
    def atoms(self) -> List[Tuple[Point, float]]:
        return list(zip(self.points, self._weights.tolist()))

    def _arrays(self) -> dict:
        return {f: getattr(self, f) for f in self._fields}

    def subset(self, mask: np.ndarray):
        """Measure of the same kind keeping the atoms selected by
        :obj:`mask`."""
        mask = np.asarray(mask)
        return type(self)(**{k: v[mask] for k, v in self._arrays().items()})

    def end_mask(self, end: EndLike) -> np.ndarray:
        return self._ends == EndTag.parse(end).code

    def restrict(self, end: EndLike):
        """Keep only the atoms lying on :obj:`end`."""
        return self.subset(self.end_mask(end))

    def scale(self, c: float):
        """The measure :math:`c\\,\\sigma`."""
        if c <= 0:
            raise ValueError(f"Scale factor must be positive, got {c}.")
        arrays = self._arrays()
        arrays['weights'] = arrays['weights'] * c
        return type(self)(**arrays)

    def check_support(self, params: KernelParams):
        """Check that every atom lies within the ends, i.e., has
        :math:`s \\leq S`.

        Raises:
            ValueError: If an atom lies beyond :obj:`params.S`. The message
                names the first such atom.
        """
        outside = np.flatnonzero(self._s > params.S)
        if len(outside):
            i = int(outside[0])
            raise ValueError(f"{self._name}[{i}]: s={self._s[i]:g} lies "
                             f"beyond S={params.S:g} ({len(outside)} "
                             f"atom(s) outside the ends).")
        return self

    def cell_index(self, params: KernelParams) -> np.ndarray:
        """Index of the finest dyadic cell containing each atom, :obj:`-1`
        for atoms at the junction."""
        idx = np.floor(self._s / params.resolution).astype(int)
        idx = np.clip(idx, 0, params.n_cells - 1)
        return np.where(self._ends == JUNCTION, -1, idx)

    def to_records(self) -> List[dict]:
        return [
            dict(end=EndTag.from_code(e).value, s=float(s), w=float(w))
            for e, s, w in zip(self._ends, self._s, self._weights)
        ]

    @classmethod
    def empty(cls):
        return cls(**{f: [] for f in cls._fields})

    _record_fields = (('end', 'ends'), ('s', 's'), ('w', 'weights'))

    @classmethod
    def from_records(cls, records: Sequence[Mapping], name: str = 'sigma'):
        """Build a measure from JSON records like
        :obj:`{"end": "big", "s": 1.5, "w": 0.3}`.

        Raises:
            InstanceFormatError: If a record misses a field or holds an
                invalid value. The message names the atom index.
        """
        if not isinstance(records, (list, tuple)):
            raise InstanceFormatError(f"'{name}' must be a list of atoms.")
        columns = {f: [] for f in cls._fields}
        for i, record in enumerate(records):
            if not isinstance(record, Mapping):
                raise InstanceFormatError(f"{name}[{i}]: atom must be an "
                                          f"object.")
            for key, field in cls._record_fields:
                if key not in record:
                    if key == 's' and str(record.get('end')) == 'junction':
                        columns[field].append(0.)
                        continue
                    raise InstanceFormatError(f"{name}[{i}]: missing field "
                                              f"'{key}'.")
                value = record[key]
                try:
                    if key == 'end':
                        value = EndTag.parse(value).code
                    else:
                        value = float(value)
                        cls._check_value(key, value)
                except (TypeError, ValueError) as err:
                    raise InstanceFormatError(f"{name}[{i}]: invalid field "
                                              f"'{key}': {err}")
                columns[field].append(value)
        try:
            return cls(**columns)
        except ValueError as err:
            raise InstanceFormatError(f"{name}: {err}")

    @staticmethod
    def _check_value(key: str, value: float):
        if not np.isfinite(value):
            raise ValueError(f"{value} is not finite")
        if key == 's' and value < 0:
            raise ValueError(f"{value} is negative")
        if key in ('w', 't') and value <= 0:
            raise ValueError(f"{value} is not positive")


class UpperHalfMeasure(DiscreteMeasure):
    r"""Finite atomic measure :math:`\mu` on :math:`M_+ = M \times (0,
    \infty)`.

    Args:
        ends (Sequence): End tag (or code) of each atom.
        s (Sequence): Profile coordinate of each atom.
        t (Sequence): Positive height of each atom.
        weights (Sequence): Positive weight of each atom.
    """
    _name = 'mu'
    _fields = ('ends', 's', 't', 'weights')
    _record_fields = (('end', 'ends'), ('s', 's'), ('t', 't'), ('w',
                                                                 'weights'))

    def __init__(self, ends: Sequence[EndLike], s: ArrayLike,
                 t: ArrayLike, weights: ArrayLike):
        t = np.array(t, dtype=float).ravel()
        if np.any(~np.isfinite(t)) or np.any(t <= 0):
            raise ValueError("Heights t must be finite and positive.")
        if len(t) != len(np.ravel(weights)):
            raise ValueError("Atom arrays must have the same length.")
        self._t = _frozen(t)
        super(UpperHalfMeasure, self).__init__(ends, s, weights)

    def _keys(self) -> np.ndarray:
        return np.column_stack([self._ends.astype(float), self._s, self._t])

    @property
    def t(self) -> np.ndarray:
        return self._t

    @property
    def atoms(self) -> List[Tuple[Point, float, float]]:
        return list(zip(self.points, self._t.tolist(),
                        self._weights.tolist()))

    def tilde(self) -> 'UpperHalfMeasure':
        r"""The measure :math:`d\tilde{\mu} = t^2 d\mu`."""
        return UpperHalfMeasure(self._ends, self._s, self._t,
                                self._t**2 * self._weights)

    def to_records(self) -> List[dict]:
        return [
            dict(end=EndTag.from_code(e).value, s=float(s), t=float(t),
                 w=float(w))
            for e, s, t, w in zip(self._ends, self._s, self._t,
                                  self._weights)
        ]

    @classmethod
    def from_records(cls, records: Sequence[Mapping], name: str = 'mu'):
        return super(UpperHalfMeasure, cls).from_records(records, name)


def restrict(measure: DiscreteMeasure, end: EndLike):
    """Restriction of a measure to the atoms lying on one end. The result is
    a measure of the same kind."""
    return measure.restrict(end)
