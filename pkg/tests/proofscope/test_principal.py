import numpy as np
import pytest

from twp.datasets import generate
from twp.dyadic import DyadicCube, box
from twp.model import EndTag, KernelParams, UpperHalfMeasure
from twp.proofscope import principal_cubes

params = KernelParams(m=4, n=3, S=8, L=6)


def brute_force_alpha(mu, phi, cube):
    num, den = 0., 0.
    for (x, t, w), f in zip(mu.atoms, phi):
        if box(cube).contains(x.end.code, x.s, t):
            num += f / t * t**2 * w
            den += t**2 * w
    return num / den if den > 0 else None


def brute_force_selection(mu, phi, factor=10.):
    root = DyadicCube.root(params)
    selected = {root}

    def visit(cube, current):
        for child in cube.children(params.L):
            alpha = brute_force_alpha(mu, phi, child)
            if alpha is None:
                continue
            if alpha > 0 and alpha >= factor * current:
                selected.add(child)
                visit(child, alpha)
            else:
                visit(child, current)

    visit(root, brute_force_alpha(mu, phi, root))
    return selected


def _concentrated():
    # one deep atom carrying phi, background atoms with small phi / t
    ends = ['big'] * 5 + ['small'] * 2
    s = [0.05, 1., 3., 5., 7., 2., 6.]
    t = [0.1, 4., 4., 4., 4., 4., 4.]
    mu = UpperHalfMeasure(ends, s, t, np.ones(7))
    phi = np.array([1e4] + [0.01 * h for h in t[1:]])
    return mu, phi


def test_constant_ratio():
    mu = generate(0, 1, 20, params=params).mu
    forest = principal_cubes(params, mu, 3. * mu.t)
    assert [g.id for g in forest.selected] == ['root']
    for cube, alpha in forest.alpha.items():
        assert alpha == pytest.approx(3., rel=1e-12)


def test_concentrated_chain():
    mu, phi = _concentrated()
    forest = principal_cubes(params, mu, phi)
    assert set(forest.selected) == brute_force_selection(mu, phi)
    assert len(forest) >= 2
    deep = DyadicCube(EndTag.BIG, params.L, 0, params.S)
    g = forest.principal_ancestor(deep)
    assert g.end is EndTag.BIG and g.level >= 2
    for cube, alpha in forest.alpha.items():
        assert alpha == pytest.approx(brute_force_alpha(mu, phi, cube),
                                      rel=1e-12)
    # parents are proper principal ancestors
    for child, parent in forest.parent.items():
        if parent is not None:
            assert parent in forest
            assert parent.contains_cube(child) and parent != child
            assert forest.alpha[child] >= 10 * forest.alpha[parent]


def test_selection_matches_brute_force():
    for seed in range(5):
        mu = generate(seed, 1, 16, params=params).mu
        phi = np.random.default_rng(seed).pareto(1., size=len(mu))
        forest = principal_cubes(params, mu, phi)
        assert set(forest.selected) == brute_force_selection(mu, phi)


def test_carleson_and_alpha_bound():
    for seed in range(50):
        mu = generate(seed, 1, 24, params=params).mu
        rng = np.random.default_rng(seed)
        phi = rng.exponential(size=len(mu)) * rng.choice([0., 1.], len(mu))
        forest = principal_cubes(params, mu, phi)
        report = forest.to_dict()
        assert report['carleson_holds']
        assert report['carleson_sum'] <= 16 * forest.phi_norm2 * (1 + 1e-9)
        assert report['alpha_bound_holds']


def test_errors():
    mu = UpperHalfMeasure(['small', 'small'], [1., 2.], [0.5, 0.5], [1., 1.])
    with pytest.raises(ValueError):
        principal_cubes(params, mu, np.ones(2),
                        root=DyadicCube.top(params, EndTag.BIG))
    with pytest.raises(ValueError):
        principal_cubes(params, mu, np.array([1., -1.]))
    with pytest.raises(ValueError):
        principal_cubes(params, mu, np.ones(3))
