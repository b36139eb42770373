import numpy as np
import pytest

from twp.dyadic import (OpenSet, dilate, enumerate_cubes, triple, whitney)
from twp.model import EndTag, KernelParams

params = KernelParams(m=4, n=3, S=1, L=5)


def _inside(omega, end, interval):
    res = omega.params.resolution
    a, b = int(round(interval.lo / res)), int(round(interval.hi / res))
    return bool(omega.mask(end)[a:b].all())


def _maximal(cubes):
    chosen = set(cubes)
    return {c for c in chosen if not any(a in chosen for a in c.ancestors())}


def brute_force_whitney(omega):
    out = set()
    for end in (EndTag.BIG, EndTag.SMALL):
        if not omega.mask(end).any():
            continue
        cubes = enumerate_cubes(omega.params, include_root=False, ends=[end])
        inner = [c for c in cubes if _inside(omega, end, triple(c))]
        strict = [c for c in inner if not _inside(omega, end, dilate(c, 5))]
        out |= _maximal(strict) if strict else _maximal(inner)
    return out


def _check_family(family, omega):
    cubes = family.cubes
    assert len(set(cubes)) == len(cubes)
    for i, a in enumerate(cubes):
        assert _inside(omega, a.end, triple(a))
        for b in cubes[i + 1:]:
            assert not a.contains_cube(b) and not b.contains_cube(a)
    for end in (EndTag.BIG, EndTag.SMALL):
        assert not np.any(family.covered(end) & ~omega.mask(end))
    assert family.multiplicity() <= 12


def test_empty():
    family = whitney(OpenSet(params))
    assert len(family) == 0
    assert family.degenerate == []


def test_whole_end():
    omega = OpenSet.from_intervals(params, {'small': [[0, 1]]})
    family = whitney(omega)
    assert [c.id for c in family] == ['small:0:0']
    assert family.degenerate == [EndTag.SMALL]


def test_two_intervals():
    omega = OpenSet.from_intervals(params, {'big': [[0, .5], [.75, 1]]})
    family = whitney(omega)
    assert set(family.cubes) == brute_force_whitney(omega)
    assert family.degenerate == []
    _check_family(family, omega)
    for cube in family:
        assert not _inside(omega, cube.end, dilate(cube, 5))


def test_random_open_sets():
    rng = np.random.default_rng(0)
    for _ in range(50):
        masks = {}
        for end in ('big', 'small'):
            cells = np.zeros(params.n_cells, dtype=bool)
            for _ in range(rng.integers(0, 4)):
                a = rng.integers(0, params.n_cells)
                b = rng.integers(a + 1, params.n_cells + 1)
                cells[a:b] = True
            masks[end] = cells
        omega = OpenSet(params, masks)
        family = whitney(omega)
        assert set(family.cubes) == brute_force_whitney(omega)
        _check_family(family, omega)


def test_intervals_round_trip():
    intervals = {'big': [[0., .5], [.75, 1.]], 'small': [[.25, .375]]}
    omega = OpenSet.from_intervals(params, intervals)
    assert omega.to_intervals() == intervals
    with pytest.raises(ValueError):
        OpenSet.from_intervals(params, {'big': [[0, .3]]})
    with pytest.raises(ValueError):
        OpenSet.from_intervals(params, {'big': [[0, 2]]})
    with pytest.raises(ValueError):
        OpenSet(params, {'junction': np.ones(params.n_cells)})
