from typing import NamedTuple, Optional, Sequence

import numpy as np

from twp.model.ends import BIG, JUNCTION, SMALL
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams

__all__ = ['Instance', 'RandomInstanceGenerator', 'generate']


class Instance(NamedTuple):
    sigma: DiscreteMeasure
    mu: UpperHalfMeasure
    seed: Optional[int] = None


def _log_uniform(rng: np.random.Generator, lo: float, hi: float,
                 size: int) -> np.ndarray:
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _proportions(weights: Sequence[float]) -> np.ndarray:
    p = np.asarray(weights, dtype=float)
    if p.shape != (3, ) or np.any(p < 0) or p.sum() <= 0:
        raise ValueError("End proportions must be three nonnegative numbers "
                         "(big, small, junction) with positive sum.")
    return p / p.sum()


class RandomInstanceGenerator:
    r"""Generator of random atomic weight pairs :math:`(\sigma, \mu)`.

    Positions :math:`s` and heights :math:`t` are log-uniform in
    :math:`[S 2^{-L}, S]`, so that balls of radius much larger than one in
    the small end are well represented; weights are log-uniform in
    :math:`[10^{-3}, 10^3]`. End tags are drawn with the given proportions;
    since the junction is a single point, :math:`\sigma` gets at most one
    junction atom and the extra draws are moved to the ends.

    Args:
        params (KernelParams): Model parameters.
        sigma_ends (Sequence): Proportions of :math:`\sigma`-atoms on the big
            end, the small end and the junction.
            (default: :obj:`(0.45, 0.45, 0.1)`)
        mu_ends (Sequence, optional): Same for :math:`\mu`. If :obj:`None`,
            then :obj:`sigma_ends` is used. (default: :obj:`None`)
        weight_range (tuple): Range of the weights.
            (default: :obj:`(1e-3, 1e3)`)
    """

    def __init__(self,
                 params: KernelParams,
                 sigma_ends: Sequence[float] = (0.45, 0.45, 0.1),
                 mu_ends: Optional[Sequence[float]] = None,
                 weight_range: Sequence[float] = (1e-3, 1e3)):
        self.params = params
        self.sigma_ends = _proportions(sigma_ends)
        self.mu_ends = _proportions(sigma_ends if mu_ends is None else mu_ends)
        self.weight_range = tuple(weight_range)

    def _ends(self, rng: np.random.Generator, p: np.ndarray, size: int,
              unique_junction: bool) -> np.ndarray:
        ends = rng.choice([BIG, SMALL, JUNCTION], size=size, p=p)
        if unique_junction:
            extra = np.flatnonzero(ends == JUNCTION)[1:]
            if len(extra):
                ends_p = p[:2] if p[:2].sum() > 0 else np.ones(2)
                ends[extra] = rng.choice([BIG, SMALL],
                                         size=len(extra),
                                         p=ends_p / ends_p.sum())
        return ends

    def sample(self, seed: int, n_sigma: int, n_mu: int) -> Instance:
        """Draw one instance, deterministically in :obj:`seed`.

        Raises:
            ValueError: If a count is smaller than one.
        """
        if n_sigma < 1 or n_mu < 1:
            raise ValueError(f"Atom counts must be at least 1, got "
                             f"({n_sigma}, {n_mu}).")
        rng = np.random.default_rng(seed)
        lo, hi = self.params.resolution, self.params.S
        w_lo, w_hi = self.weight_range

        sigma = DiscreteMeasure(
            ends=self._ends(rng, self.sigma_ends, n_sigma, True),
            s=_log_uniform(rng, lo, hi, n_sigma),
            weights=_log_uniform(rng, w_lo, w_hi, n_sigma))
        mu = UpperHalfMeasure(ends=self._ends(rng, self.mu_ends, n_mu, False),
                              s=_log_uniform(rng, lo, hi, n_mu),
                              t=_log_uniform(rng, lo, hi, n_mu),
                              weights=_log_uniform(rng, w_lo, w_hi, n_mu))
        return Instance(sigma, mu, seed)


def generate(seed: int,
             n_sigma: int,
             n_mu: Optional[int] = None,
             params: Optional[KernelParams] = None,
             **kwargs) -> Instance:
    """Draw a random instance, see :class:`RandomInstanceGenerator`.

    Args:
        seed (int): Seed of the random number generator.
        n_sigma (int): Number of :math:`\\sigma`-atoms.
        n_mu (int, optional): Number of :math:`\\mu`-atoms. If :obj:`None`,
            then :obj:`n_sigma` is used. (default: :obj:`None`)
        params (KernelParams, optional): Model parameters.
            (default: :obj:`KernelParams()`)
        **kwargs: Keyword arguments of :class:`RandomInstanceGenerator`.
    """
    params = KernelParams() if params is None else params
    n_mu = n_sigma if n_mu is None else n_mu
    return RandomInstanceGenerator(params, **kwargs).sample(seed, n_sigma, n_mu)
