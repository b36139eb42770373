import numpy as np
import pytest

from twp.datasets import generate
from twp.dyadic import DyadicMaximal, box, dyadic_maximal, enumerate_cubes
from twp.model import EndTag, KernelParams, UpperHalfMeasure

params = KernelParams(m=4, n=3, S=8, L=4)


def brute_force_maximal(mu_tilde, psi, query):
    end, s, t = query
    best = 0.
    for cube in enumerate_cubes(params):
        b = box(cube)
        if not b.contains(end, s, t):
            continue
        inside = b.contains(mu_tilde.ends, mu_tilde.s, mu_tilde.t)
        mass = mu_tilde.weights[inside].sum()
        if mass > 0:
            avg = np.sum(np.abs(psi[inside]) * mu_tilde.weights[inside]) / mass
            best = max(best, avg)
    return best


def test_constant_psi():
    mu = generate(3, 1, 20, params=params).mu.tilde()
    values = DyadicMaximal(params, mu).at_atoms(np.ones(len(mu)))
    assert np.allclose(values, 1.)


def test_single_atom():
    mu = UpperHalfMeasure(['big'], [1.3], [0.2], [2.]).tilde()
    maximal = DyadicMaximal(params, mu)
    assert maximal.at_atoms(np.ones(1))[0] == pytest.approx(1.)
    # no box reaches this height
    value = dyadic_maximal(params, mu, np.ones(1), EndTag.BIG.code, 1.3,
                           100.)
    assert value[0] == 0.


def test_matches_brute_force():
    for seed in range(5):
        mu = generate(seed, 1, 12, params=params).mu.tilde()
        rng = np.random.default_rng(seed)
        psi = rng.uniform(-1, 1, len(mu))
        values = DyadicMaximal(params, mu).at_atoms(psi)
        for i in range(len(mu)):
            query = (mu.ends[i], mu.s[i], mu.t[i])
            assert values[i] == pytest.approx(
                brute_force_maximal(mu, psi, query), rel=1e-12)


def test_weak_type_and_sup_bound():
    for seed in range(10):
        mu = generate(seed, 1, 24, params=params).mu.tilde()
        rng = np.random.default_rng(seed)
        psi = rng.exponential(size=len(mu))
        maximal = DyadicMaximal(params, mu)
        values = maximal.at_atoms(psi)
        assert values.max() <= psi.max() * (1 + 1e-12)
        l1 = float(np.sum(psi * mu.weights))
        for lam in np.unique(values):
            for level in (0.5 * lam, lam, 0.999 * lam):
                mass = maximal.level_set_mass(psi, level)
                assert mass <= l1 / level * (1 + 1e-12)


def test_psi_shape():
    mu = generate(0, 1, 4, params=params).mu.tilde()
    with pytest.raises(ValueError):
        DyadicMaximal(params, mu).at_atoms(np.ones(3))


@pytest.mark.slow
def test_weak_type_many_functions():
    for seed in range(10):
        mu = generate(seed, 1, 32, params=params).mu.tilde()
        maximal = DyadicMaximal(params, mu)
        rng = np.random.default_rng(100 + seed)
        for _ in range(10):
            psi = rng.exponential(size=len(mu)) * rng.choice([0., 1.],
                                                             len(mu))
            l1 = float(np.sum(psi * mu.weights))
            top = max(maximal.at_atoms(psi).max(), 1e-3)
            for lam in np.geomspace(top / 100, top, 20):
                mass = maximal.level_set_mass(psi, lam)
                assert mass <= l1 / lam * (1 + 1e-12)
