r"""Testing constants of the two-weight inequality.

For every dyadic cube :math:`I` the forward condition tests :math:`P_\sigma`
on :math:`1_I`,

.. math::

    \int_{\widehat{3I}} P_\sigma(1_I)^2 \, d\mu \leq \mathcal{F}^2 \sigma(I),

and the backward condition tests :math:`P^*_\mu` on :math:`t 1_{\hat{I}}`,

.. math::

    \int_{3I} P^*_\mu(t 1_{\hat{I}})^2 \, d\sigma \leq \mathcal{B}^2
    \int_{\hat{I}} t^2 \, d\mu.
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from twp.dyadic.cubes import DyadicCube, box, box3, enumerate_cubes, \
    membership, triple
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams
from twp.operators.matrix import OperatorMatrix
from twp.typing import HatConvention

__all__ = ['TestingConstant', 'forward_constant', 'backward_constant']


@dataclass
class TestingConstant:
    """Value of a testing constant, the cube attaining it and the tested
    quotient of every cube (:obj:`nan` for skipped cubes)."""
    value: float
    achiever: Optional[DyadicCube]
    quotients: np.ndarray
    cubes: List[DyadicCube]

    @property
    def achiever_id(self) -> Optional[str]:
        return None if self.achiever is None else self.achiever.id


def _best(quotients: np.ndarray, cubes: List[DyadicCube]) -> TestingConstant:
    if np.all(np.isnan(quotients)):
        return TestingConstant(0., None, quotients, cubes)
    # first maximizer in enumeration order
    i = int(np.nanargmax(quotients))
    return TestingConstant(float(np.sqrt(quotients[i])), cubes[i], quotients,
                           cubes)


def forward_constant(params: KernelParams,
                     sigma: DiscreteMeasure,
                     mu: UpperHalfMeasure,
                     cubes: Optional[List[DyadicCube]] = None,
                     convention: Optional[HatConvention] = None,
                     matrix: Optional[OperatorMatrix] = None
                     ) -> TestingConstant:
    r"""Forward testing constant :math:`\mathcal{F}`.

    :math:`\mathcal{F}^2` is the largest, over the cubes with
    :math:`\sigma(I) > 0`, of

    .. math::

        \frac{1}{\sigma(I)} \sum_{(x,t) \in \widehat{3I}}
        (P_\sigma 1_I)(x,t)^2 \mu(\{(x,t)\}).

    Args:
        params (KernelParams): Model parameters.
        sigma (DiscreteMeasure): The measure on the manifold.
        mu (UpperHalfMeasure): The measure on the upper half space.
        cubes (list, optional): Cubes to test. If :obj:`None`, then all the
            cubes down to level :math:`L` are used. (default: :obj:`None`)
        convention (str, optional): Region :math:`\widehat{3I}`, see
            :func:`~twp.dyadic.box3`. (default: :obj:`None`)
        matrix (OperatorMatrix, optional): Precomputed kernel matrix.
            (default: :obj:`None`)

    Raises:
        ValueError: If :obj:`sigma` is empty.
    """
    if sigma.is_empty:
        raise ValueError("The forward constant needs a nonempty sigma.")
    cubes = enumerate_cubes(params) if cubes is None else cubes
    matrix = OperatorMatrix(params, sigma, mu) if matrix is None else matrix
    # (n_cubes, n_sigma): sigma restricted to each cube
    in_cube = membership(cubes, sigma.ends, sigma.s)
    sigma_mass = in_cube @ sigma.weights
    # (n_mu, n_cubes): P_sigma(1_I) at every mu atom
    tested = matrix.kernel @ (in_cube * sigma.weights).T
    regions = [box3(c, convention) for c in cubes]
    in_region = membership(regions, mu.ends, mu.s, mu.t)
    energy = np.einsum('cj,jc,j->c', in_region.astype(float), tested**2,
                       mu.weights)
    with np.errstate(invalid='ignore', divide='ignore'):
        quotients = np.where(sigma_mass > 0, energy / sigma_mass, np.nan)
    return _best(quotients, cubes)


def backward_constant(params: KernelParams,
                      sigma: DiscreteMeasure,
                      mu: UpperHalfMeasure,
                      cubes: Optional[List[DyadicCube]] = None,
                      matrix: Optional[OperatorMatrix] = None
                      ) -> TestingConstant:
    r"""Backward testing constant :math:`\mathcal{B}`.

    :math:`\mathcal{B}^2` is the largest, over the cubes with
    :math:`\tilde{\mu}(\hat{I}) > 0`, of

    .. math::

        \frac{1}{\tilde{\mu}(\hat{I})} \sum_{y \in 3I}
        (P^*_\mu(t 1_{\hat{I}}))(y)^2 \sigma(\{y\}).

    Raises:
        ValueError: If :obj:`mu` is empty.
    """
    if mu.is_empty:
        raise ValueError("The backward constant needs a nonempty mu.")
    cubes = enumerate_cubes(params) if cubes is None else cubes
    matrix = OperatorMatrix(params, sigma, mu) if matrix is None else matrix
    in_box = membership([box(c) for c in cubes], mu.ends, mu.s, mu.t)
    mu_tilde = in_box @ (mu.t**2 * mu.weights)
    # (n_sigma, n_cubes): P*_mu(t 1_I^) at every sigma atom
    tested = matrix.kernel.T @ (in_box * (mu.t * mu.weights)).T
    in_triple = membership([triple(c) for c in cubes], sigma.ends, sigma.s)
    energy = np.einsum('cy,yc,y->c', in_triple.astype(float), tested**2,
                       sigma.weights)
    with np.errstate(invalid='ignore', divide='ignore'):
        quotients = np.where(mu_tilde > 0, energy / mu_tilde, np.nan)
    return _best(quotients, cubes)
