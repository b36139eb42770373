from typing import Optional

import numpy as np

from twp.kernel.poisson import kernel_matrix
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams
from twp.typing import MirrorRule

__all__ = ['OperatorMatrix', 'apply_forward', 'apply_adjoint']


class OperatorMatrix:
    r"""Dense kernel matrix of the pair :math:`(\sigma, \mu)`.

    Rows are indexed by the atoms :math:`(x, t)` of :math:`\mu`, columns by
    the atoms :math:`y` of :math:`\sigma`, and the entries are
    :math:`P_t(x, y)`. The matrix and the cached weight vectors are
    read-only after construction.

    Args:
        params (KernelParams): Model parameters.
        sigma (DiscreteMeasure): The measure on the manifold.
        mu (UpperHalfMeasure): The measure on the upper half space.
        mirror_rule (str, optional): Symmetrization of the kernel, see
            :func:`~twp.kernel.kernel_matrix`. (default: :obj:`None`)
    """

    def __init__(self,
                 params: KernelParams,
                 sigma: DiscreteMeasure,
                 mu: UpperHalfMeasure,
                 mirror_rule: Optional[MirrorRule] = None):
        self.params = params
        self.sigma = sigma
        self.mu = mu
        kernel = kernel_matrix(params, mu.t, mu.ends, mu.s, sigma.ends,
                               sigma.s, mirror_rule=mirror_rule)
        kernel = np.ascontiguousarray(kernel)
        kernel.setflags(write=False)
        self.kernel = kernel

    @property
    def shape(self):
        return self.kernel.shape

    @property
    def sigma_weights(self) -> np.ndarray:
        return self.sigma.weights

    @property
    def mu_weights(self) -> np.ndarray:
        return self.mu.weights

    def forward(self, f: np.ndarray) -> np.ndarray:
        r""":math:`(P_\sigma f)(x,t) = \sum_y P_t(x,y) f(y) \sigma(\{y\})`."""
        f = np.asarray(f, dtype=float)
        if f.shape[0] != self.shape[1]:
            raise ValueError("f must hold one value per sigma atom.")
        return self.kernel @ (f * self.sigma_weights)

    def adjoint(self, g: np.ndarray) -> np.ndarray:
        r""":math:`(P^*_\mu g)(y) = \sum_{(x,t)} P_t(x,y) g(x,t)
        \mu(\{(x,t)\})`."""
        g = np.asarray(g, dtype=float)
        if g.shape[0] != self.shape[0]:
            raise ValueError("g must hold one value per mu atom.")
        return self.kernel.T @ (g * self.mu_weights)

    def weighted(self) -> np.ndarray:
        r"""The matrix :math:`W_\mu^{1/2} P W_\sigma^{1/2}`, whose spectral
        norm is the two-weight norm."""
        return np.sqrt(self.mu_weights)[:, None] * self.kernel * \
            np.sqrt(self.sigma_weights)[None, :]


def apply_forward(params: KernelParams, sigma: DiscreteMeasure,
                  mu: UpperHalfMeasure, f: np.ndarray) -> np.ndarray:
    """Apply :math:`P_\\sigma` to a function on the atoms of :obj:`sigma`,
    returning its values on the atoms of :obj:`mu`."""
    return OperatorMatrix(params, sigma, mu).forward(f)


def apply_adjoint(params: KernelParams, sigma: DiscreteMeasure,
                  mu: UpperHalfMeasure, g: np.ndarray) -> np.ndarray:
    """Apply :math:`P^*_\\mu` to a function on the atoms of :obj:`mu`,
    returning its values on the atoms of :obj:`sigma`."""
    return OperatorMatrix(params, sigma, mu).adjoint(g)
