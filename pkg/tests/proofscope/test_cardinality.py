import math

import numpy as np
import pytest

from twp.datasets import generate
from twp.dyadic import DyadicCube
from twp.errors import InvariantViolation
from twp.kernel import KernelPieceId
from twp.model import EndTag, KernelParams
from twp.proofscope import (LevelSetLadder, StoppingData, StoppingEntry,
                            cardinality_check, ladder, principal_cubes,
                            split_phi)

params = KernelParams(m=4, n=3, S=8, L=6)


@pytest.mark.slow
@pytest.mark.parametrize('delta', [1, 1 / 2, 1 / 4, 1 / 8])
def test_flag_counts(delta):
    bound = math.ceil(1 / delta)
    for seed in range(20):
        sigma, mu, _ = generate(seed, 16, 16, params=params)
        phi = np.random.default_rng(seed).exponential(size=len(mu))
        levels = ladder(params, sigma, mu, phi, delta=delta)
        forest = principal_cubes(params, mu, split_phi(mu, phi, 1))
        report = cardinality_check(levels, forest)
        assert report.bound == bound
        assert report.passed
        assert report.max_count <= bound
        assert all(n >= 1 for n in report.principal_counts.values())
        assert report.to_dict()['max_principal_count'] == \
            report.max_principal_count


def _fake_ladder(flags, delta):
    cube = DyadicCube(EndTag.BIG, 2, 1, params.S)
    entries = [
        StoppingEntry(k, cube, 1., 2., flagged, np.array([k]))
        for k, flagged in enumerate(flags)
    ]
    return LevelSetLadder(params, KernelPieceId(1, 1), 1, EndTag.BIG, 11,
                          delta, np.zeros(params.n_cells),
                          np.zeros(params.n_cells), list(range(len(flags))),
                          stopping=StoppingData(entries))


def test_too_many_flags():
    levels = _fake_ladder([True, True, True], 0.5)
    with pytest.raises(InvariantViolation):
        cardinality_check(levels)
    report = cardinality_check(levels, strict=False)
    assert not report.passed
    assert report.counts == {'big:2:1': 3}


def test_bound_with_float_delta():
    levels = _fake_ladder([True, False, True], 0.1 + 0.2 - 0.2)
    assert cardinality_check(levels).bound == 10


def test_full_threshold_allows_one_flag():
    assert cardinality_check(_fake_ladder([False, True], 1.)).bound == 1
    with pytest.raises(InvariantViolation):
        cardinality_check(_fake_ladder([True, True], 1.))
