import json

import numpy as np
import pandas as pd
import pytest

from twp.datasets import generate
from twp.model import DiscreteMeasure, KernelParams, UpperHalfMeasure
from twp.testing import (batch_maxima, summarize_sweep, sweep, verify,
                         write_sweep_csv)
from twp.testing.sweep import CSV_COLUMNS

params = KernelParams(m=4, n=3, S=8, L=4)


def test_single_atom_ratio():
    sigma = DiscreteMeasure(['small'], [2.], [1.])
    mu = UpperHalfMeasure(['big'], [0.5], [1.5], [1.])
    report = verify(params, sigma, mu)
    assert report.F == pytest.approx(report.N, rel=1e-12)
    assert report.B == pytest.approx(report.N, rel=1e-12)
    assert report.ratio == pytest.approx(0.5, rel=1e-12)
    assert report.necessity_holds()
    out = report.to_dict()
    assert out['metadata']['n_cubes'] == 2**(params.L + 2) - 1
    json.dumps(out)


def test_scaling_sigma():
    sigma, mu, _ = generate(4, 10, 10, params=params)
    base = verify(params, sigma, mu)
    scaled = verify(params, sigma.scale(4.), mu)
    for key in ('N', 'F', 'B'):
        assert getattr(scaled, key) == pytest.approx(2 * getattr(base, key),
                                                     rel=1e-8)
    assert scaled.ratio == pytest.approx(base.ratio, rel=1e-8)
    assert scaled.F_achiever == base.F_achiever
    assert scaled.B_achiever == base.B_achiever


def test_scaling_mu():
    sigma, mu, _ = generate(5, 10, 10, params=params)
    base = verify(params, sigma, mu)
    scaled = verify(params, sigma, mu.scale(9.))
    for key in ('N', 'F', 'B'):
        assert getattr(scaled, key) == pytest.approx(3 * getattr(base, key),
                                                     rel=1e-8)


def test_necessity_random_instances():
    for seed in range(20):
        sigma, mu, _ = generate(seed, 16, 16, params=params)
        report = verify(params, sigma, mu)
        assert report.F <= report.N * (1 + 1e-9)
        assert report.B <= report.N * (1 + 1e-9)
        assert np.isfinite(report.ratio)


def test_sweep_frame(tmp_path):
    frame = sweep(params, instances=3, seed=7, atoms=8, progress=False)
    assert frame.seed.tolist() == [7, 8, 9]
    assert frame.necessity.all()
    assert set(CSV_COLUMNS).issubset(frame.columns)
    summary = summarize_sweep(frame, ratio_ceiling=100.)
    assert summary['instances'] == 3
    assert summary['necessity_violations'] == 0
    assert summary['above_ceiling'] == 0
    with pytest.raises(ValueError):
        sweep(params, instances=0, seed=7, atoms=8, progress=False)


def test_sweep_csv_deterministic(tmp_path):
    paths = []
    for name in ('first.csv', 'second.csv'):
        frame = sweep(params, instances=4, seed=7, atoms=8, progress=False)
        paths.append(write_sweep_csv(frame, str(tmp_path / name)))
    with open(paths[0], 'rb') as a, open(paths[1], 'rb') as b:
        assert a.read() == b.read()


def test_atoms_beyond_the_ends():
    sigma = DiscreteMeasure(['big', 'big'], [1., 50.], [1., 1.])
    mu = UpperHalfMeasure(['big'], [2.], [1.], [1.])
    with pytest.raises(ValueError, match=r"sigma\[1\]"):
        verify(params, sigma, mu)
    sigma = DiscreteMeasure(['big'], [1.], [1.])
    mu = UpperHalfMeasure(['small'], [9.], [1.], [1.])
    with pytest.raises(ValueError, match=r"mu\[0\]"):
        verify(params, sigma, mu)


def test_batch_maxima():
    frame = pd.DataFrame(dict(seed=[5, 3, 4, 1, 2, 0],
                              ratio=[.9, .6, .7, .8, .5, .55]))
    assert batch_maxima(frame, 3) == [.8, .6, .9]
    with pytest.raises(ValueError):
        batch_maxima(frame, 7)
    frame = sweep(params, instances=6, seed=7, atoms=6, progress=False)
    summary = summarize_sweep(frame)
    assert len(summary['batch_max_ratio']) == 3
    assert max(summary['batch_max_ratio']) == summary['max_ratio']
    assert summary['batch_spread'] >= 0
    assert summarize_sweep(frame.head(2))['batch_spread'] is None
