import json

import numpy as np
import pytest

from twp.datasets import generate
from twp.kernel import piece
from twp.model import DiscreteMeasure, EndTag, KernelParams, Point, \
    UpperHalfMeasure
from twp.proofscope import ladder, run_proofscope, split_phi
from twp.proofscope.ladder import cell_centers

params = KernelParams(m=4, n=3, S=8, L=6)


def _instance(seed, atoms=16):
    sigma, mu, _ = generate(seed, atoms, atoms, params=params)
    phi = np.random.default_rng(seed).exponential(size=len(mu))
    return sigma, mu, phi


def test_zero_phi():
    sigma, mu, _ = _instance(0)
    levels = ladder(params, sigma, mu, np.zeros(len(mu)))
    assert levels.ks == []
    assert levels.families == {}
    assert len(levels.stopping) == 0
    assert not np.any(levels.values)


def test_single_atom_values():
    sigma = DiscreteMeasure(['big', 'big'], [1., 5.], [1., 2.])
    mu = UpperHalfMeasure(['big'], [2.3], [0.4], [1.5])
    levels = ladder(params, sigma, mu, np.full(1, 2.))
    y = mu.points[0]
    for i, s in enumerate(cell_centers(params)):
        expected = 2. * 1.5 * piece(params, (1, 1), 0.4, Point(EndTag.BIG, s),
                                    y)
        assert levels.values[i] == pytest.approx(expected, rel=1e-12)
    # a single bump: every level set is one run of cells
    for k in levels.ks:
        runs = levels.omega(k).to_intervals()['big']
        assert len(runs) <= 1
    assert levels.is_nested()


@pytest.mark.parametrize('piece_id', [(1, 1), (1, 2), (2, 2), (4, 2), (4, 3)])
def test_ladder_invariants(piece_id):
    for seed in range(5):
        sigma, mu, phi = _instance(seed)
        levels = ladder(params, sigma, mu, phi, piece_id)
        assert levels.is_nested()
        assert levels.stopping_sets_disjoint()
        assert levels.telescoping()['holds']
        assert levels.absorption()['holds']
        report = levels.operator_maximal_principle()
        assert report['holds'], report


def test_level_range():
    sigma, mu, phi = _instance(3)
    levels = ladder(params, sigma, mu, phi)
    positive = levels.values[levels.values > 0]
    assert np.all(levels.omega_mask(levels.ks[0])[levels.values > 0])
    assert not levels.omega_mask(levels.ks[-1] + 1).any()
    assert positive.max() >= 2.**levels.ks[-1]


def test_stopping_flags():
    sigma, mu, phi = _instance(4)
    levels = ladder(params, sigma, mu, phi, delta=0.25)
    for entry in levels.stopping:
        assert entry.sigma_F <= entry.sigma_I * (1 + 1e-12)
        assert entry.flagged == (entry.sigma_I > 0
                                 and entry.sigma_F >= 0.25 * entry.sigma_I)


def test_errors():
    sigma, mu, phi = _instance(5)
    with pytest.raises(ValueError):
        ladder(params, sigma, mu, -phi)
    with pytest.raises(ValueError):
        ladder(params, sigma, mu, phi, (1, 2), split=2)
    with pytest.raises(ValueError):
        ladder(params, sigma, mu, phi, delta=1.5)
    with pytest.raises(ValueError):
        ladder(params, sigma, mu, phi, delta=0.)
    with pytest.raises(ValueError):
        ladder(params, sigma, mu, phi[:-1])
    with pytest.raises(ValueError):
        split_phi(mu, phi, 4)


def test_split_phi():
    mu = UpperHalfMeasure(['big', 'small', 'junction'], [1., 2., 0.],
                          [1., 1., 1.], [1., 1., 1.])
    phi = np.array([1., 2., 3.])
    assert split_phi(mu, phi, 1).tolist() == [1., 0., 0.]
    assert split_phi(mu, phi, 2).tolist() == [0., 2., 0.]
    assert split_phi(mu, phi, 3).tolist() == [0., 0., 3.]


def test_run_proofscope():
    sigma, mu, phi = _instance(6)
    report = run_proofscope(params, sigma, mu, (1, 1), phi=phi, samples=2_000,
                            seed=0)
    assert report['passed'], report['failures']
    assert report['ell_shift'] == 11
    assert report['constant'] == 1024
    json.dumps(report)


def test_atoms_beyond_the_ends():
    sigma = DiscreteMeasure(['big', 'big'], [1., 50.], [1., 1.])
    mu = UpperHalfMeasure(['big'], [2.3], [0.4], [1.5])
    with pytest.raises(ValueError, match=r"sigma\[1\]"):
        ladder(params, sigma, mu, np.ones(1))
    with pytest.raises(ValueError, match=r"sigma\[1\]"):
        run_proofscope(params, sigma, mu, (1, 1), samples=10)


def test_full_stopping_threshold():
    sigma, mu, phi = _instance(7)
    levels = ladder(params, sigma, mu, phi, delta=1.)
    assert levels.delta == 1.
    for entry in levels.stopping:
        assert entry.flagged == (entry.sigma_I > 0
                                 and entry.sigma_F >= entry.sigma_I)
    # disjoint stopping sets of one cube can hold all of its mass only once
    for cube, entries in levels.stopping.by_cube().items():
        assert sum(e.flagged for e in entries) <= 1
