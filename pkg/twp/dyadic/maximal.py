from typing import List, Optional

import numpy as np

from twp.model.measures import UpperHalfMeasure
from twp.model.params import KernelParams

from .cubes import DyadicCube, box, enumerate_cubes, membership

__all__ = ['DyadicMaximal', 'dyadic_maximal']


class DyadicMaximal:
    r"""Dyadic maximal function with respect to an atomic measure
    :math:`\tilde{\mu}` on the upper half space

    .. math::

        M_{\tilde{\mu}}\psi(x,t) = \sup_{J: (x,t) \in \hat{J}}
        \frac{1}{\tilde{\mu}(\hat{J})} \int_{\hat{J}} |\psi| \,
        d\tilde{\mu},

    the supremum running over the dyadic cubes (root included) whose
    Carleson box has positive mass. Points lying in no such box get value
    :obj:`0`.

    The index stores the membership of the atoms in every Carleson box and
    is read-only once built.

    Args:
        params (KernelParams): Model parameters.
        mu_tilde (UpperHalfMeasure): The measure :math:`\tilde{\mu}` (e.g.,
            :obj:`mu.tilde()`).
        cubes (list, optional): Dyadic cubes to use. If :obj:`None`, then all
            the cubes down to level :math:`L` are used. (default: :obj:`None`)
    """

    def __init__(self,
                 params: KernelParams,
                 mu_tilde: UpperHalfMeasure,
                 cubes: Optional[List[DyadicCube]] = None):
        self.params = params
        self.mu_tilde = mu_tilde
        self.cubes = enumerate_cubes(params) if cubes is None else cubes
        boxes = [box(c) for c in self.cubes]
        self.membership = membership(boxes, mu_tilde.ends, mu_tilde.s,
                                     mu_tilde.t)
        self.membership.setflags(write=False)
        self.box_mass = self.membership @ mu_tilde.weights
        self._boxes = boxes

    def averages(self, psi: np.ndarray) -> np.ndarray:
        """Average of :math:`|\\psi|` on every box, :obj:`nan` on boxes of
        zero mass."""
        psi = np.abs(np.asarray(psi, dtype=float))
        if psi.shape != (len(self.mu_tilde), ):
            raise ValueError("psi must hold one value per atom.")
        integral = self.membership @ (psi * self.mu_tilde.weights)
        with np.errstate(invalid='ignore', divide='ignore'):
            return np.where(self.box_mass > 0, integral / self.box_mass,
                            np.nan)

    def _sup(self, avg: np.ndarray, inside: np.ndarray) -> np.ndarray:
        # inside: (n_cubes, n_queries)
        valid = inside & ~np.isnan(avg)[:, None]
        values = np.where(valid, np.nan_to_num(avg)[:, None], -np.inf)
        out = values.max(axis=0, initial=-np.inf)
        return np.where(np.isinf(out), 0., out)

    def at_atoms(self, psi: np.ndarray) -> np.ndarray:
        """Maximal function evaluated at the atoms of :math:`\\tilde{\\mu}`."""
        return self._sup(self.averages(psi), self.membership)

    def __call__(self, psi: np.ndarray, ends: np.ndarray, s: np.ndarray,
                 t: np.ndarray) -> np.ndarray:
        """Maximal function evaluated at arbitrary query points."""
        inside = membership(self._boxes, ends, s, t)
        return self._sup(self.averages(psi), inside)

    def level_set_mass(self, psi: np.ndarray, lam: float) -> float:
        r""":math:`\tilde{\mu}\{M\psi > \lambda\}`."""
        values = self.at_atoms(psi)
        return float(self.mu_tilde.weights[values > lam].sum())


def dyadic_maximal(params: KernelParams, mu_tilde: UpperHalfMeasure,
                   psi: np.ndarray, ends: np.ndarray, s: np.ndarray,
                   t: np.ndarray) -> np.ndarray:
    """Functional form of :class:`DyadicMaximal`, evaluated at the query
    points :math:`(x, t)` given by :obj:`ends`, :obj:`s` and :obj:`t`."""
    return DyadicMaximal(params, mu_tilde)(psi, np.atleast_1d(ends),
                                           np.atleast_1d(s),
                                           np.atleast_1d(t))
