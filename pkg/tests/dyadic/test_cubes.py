import itertools

import numpy as np
import pytest

from twp.dyadic import (DyadicCube, box, box3, cell_span, dilate,
                        enumerate_cubes, membership, triple)
from twp.model import EndTag, KernelParams

params = KernelParams(m=4, n=3, S=1, L=3)


def test_enumeration_count():
    for L in (1, 3, 5):
        p = KernelParams(S=8, L=L)
        cubes = enumerate_cubes(p)
        assert len(cubes) == 2**(L + 2) - 1
        assert cubes[0].is_root
        assert len({c.id for c in cubes}) == len(cubes)


def test_nested_or_disjoint():
    cubes = enumerate_cubes(params, include_root=False)
    for a, b in itertools.combinations(cubes, 2):
        if a.end is not b.end:
            assert not a.contains_cube(b) and not b.contains_cube(a)
            continue
        overlap = min(a.right, b.right) - max(a.left, b.left)
        if overlap > 0:
            assert a.contains_cube(b) or b.contains_cube(a)
            small, big = (a, b) if a.length < b.length else (b, a)
            assert big.left <= small.left and small.right <= big.right


def test_triple():
    cube = DyadicCube(EndTag.BIG, 2, 0, params.S)
    assert (cube.left, cube.right) == (0., 0.25)
    t = triple(cube)
    assert (t.lo, t.hi) == (0., 0.5)
    top = DyadicCube.top(params, EndTag.SMALL)
    t = triple(top)
    assert (t.lo, t.hi) == (0., params.S)
    # concentric dilation of [0.25, 0.5)
    t = triple(DyadicCube(EndTag.BIG, 2, 1, params.S))
    assert (t.lo, t.hi) == (0., 0.75)
    t = dilate(DyadicCube(EndTag.BIG, 3, 3, params.S), 5)
    assert (t.lo, t.hi) == pytest.approx((0.125, 0.75))


def test_cell_span_matches_dilation():
    res = params.resolution
    for cube in enumerate_cubes(params, include_root=False):
        for factor in (1, 3, 5):
            a, b = cell_span(cube, params, factor)
            interval = dilate(cube, factor)
            assert a * res == pytest.approx(interval.lo)
            assert b * res == pytest.approx(interval.hi)
    with pytest.raises(ValueError):
        cell_span(DyadicCube.root(params), params)


def test_box_heights():
    p = KernelParams(S=4, L=3)
    cube = DyadicCube(EndTag.BIG, 2, 1, p.S)
    assert cube.length == 1.
    assert box(cube).height == 1.
    assert box3(cube, 'hat-of-triple').height == 3.
    assert box3(cube, 'triple-of-hat').height == 2.
    with pytest.raises(ValueError):
        box3(cube, 'hat')
    inside = box(cube).contains(EndTag.BIG.code, 1.5, 0.9)
    assert bool(inside)
    assert not bool(box(cube).contains(EndTag.BIG.code, 1.5, 1.1))
    assert not bool(box(cube).contains(EndTag.SMALL.code, 1.5, 0.9))


def test_root_and_family():
    root = DyadicCube.root(params)
    assert root.length == 2 * params.S
    assert [c.id for c in root.children()] == ['big:0:0', 'small:0:0']
    cube = DyadicCube(EndTag.SMALL, 3, 5, params.S)
    assert cube.parent == DyadicCube(EndTag.SMALL, 2, 2, params.S)
    assert cube.ancestors()[-1] == root
    assert len(cube.ancestors()) == 4
    assert cube.children(params.L) == []
    assert DyadicCube.parse(cube.id, params) == cube
    assert [c.index for c in cube.neighbors()] == [4, 5, 6]
    assert [c.index for c in DyadicCube(EndTag.BIG, 3, 0,
                                        params.S).neighbors()] == [0, 1]
    with pytest.raises(ValueError):
        DyadicCube(EndTag.BIG, 2, 4, params.S)


def test_membership():
    ends = np.array([EndTag.BIG.code, EndTag.SMALL.code,
                     EndTag.JUNCTION.code, EndTag.BIG.code])
    s = np.array([0.1, 0.1, 0., 1.])
    cubes = [DyadicCube.root(params), DyadicCube.top(params, EndTag.BIG),
             DyadicCube(EndTag.BIG, 1, 1, params.S)]
    inside = membership(cubes, ends, s)
    assert inside.tolist() == [[True, True, True, True],
                               [True, False, False, True],
                               [False, False, False, True]]
    assert membership([], ends, s).shape == (0, 4)
