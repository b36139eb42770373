from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

import twp
from twp import logger
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams

from .matrix import OperatorMatrix

__all__ = ['NormResult', 'operator_norm', 'dense_norm']


@dataclass
class NormResult:
    """Outcome of the computation of the two-weight norm.

    Singular vectors are expressed in the weighted coordinates of
    :math:`W_\\mu^{1/2} P W_\\sigma^{1/2}`, one entry per atom: :obj:`left`
    on the atoms of :math:`\\mu`, :obj:`right` on the atoms of
    :math:`\\sigma`.
    """
    value: float
    iterations: int
    residual: float
    converged: bool
    method: str = 'power'
    left: Optional[np.ndarray] = None
    right: Optional[np.ndarray] = None

    def to_dict(self, vectors: bool = False) -> dict:
        out = dict(N=self.value,
                   iters=self.iterations,
                   residual=self.residual,
                   converged=self.converged,
                   method=self.method)
        if vectors:
            out.update(left=self.left.tolist(), right=self.right.tolist())
        return out


def dense_norm(a: np.ndarray) -> NormResult:
    """Largest singular value of :obj:`a` and its singular vectors by a dense
    SVD."""
    u, s, vh = linalg.svd(a, full_matrices=False)
    left, right = u[:, 0], vh[0]
    # positive matrices have a positive top singular pair
    if right.sum() < 0:
        left, right = -left, -right
    lam = float(s[0])**2
    w = a.T @ (a @ right)
    residual = float(np.linalg.norm(w - lam * right)) / lam if lam > 0 \
        else 0.
    return NormResult(value=float(s[0]),
                      iterations=0,
                      residual=residual,
                      converged=True,
                      method='svd',
                      left=left,
                      right=right)


def _power_iteration(a: np.ndarray, tol: float, max_iters: int) -> NormResult:
    v = np.full(a.shape[1], 1. / np.sqrt(a.shape[1]))
    lam, residual, it = 0., np.inf, 0
    for it in range(1, max_iters + 1):
        av = a @ v
        w = a.T @ av
        lam = float(v @ w)
        residual = float(np.linalg.norm(w - lam * v)) / lam if lam > 0 else 0.
        if residual <= tol:
            break
        v = w / np.linalg.norm(w)
    av = a @ v
    norm_av = np.linalg.norm(av)
    left = av / norm_av if norm_av > 0 else av
    return NormResult(value=float(np.sqrt(max(lam, 0.))),
                      iterations=it,
                      residual=residual,
                      converged=residual <= tol,
                      left=left,
                      right=v)


def operator_norm(params: KernelParams,
                  sigma: DiscreteMeasure,
                  mu: UpperHalfMeasure,
                  tol: Optional[float] = None,
                  max_iters: Optional[int] = None,
                  adjoint: bool = False,
                  matrix: Optional[OperatorMatrix] = None,
                  dense_limit: Optional[int] = None) -> NormResult:
    r"""Two-weight norm :math:`\mathcal{N}`, the least constant with
    :math:`\|P_\sigma f\|_{L^2(\mu)} \leq \mathcal{N} \|f\|_{L^2(\sigma)}`.

    The norm is the largest singular value of
    :math:`A = W_\mu^{1/2} P W_\sigma^{1/2}`, computed by power iteration on
    :math:`A^*A` from the all-ones vector. The iteration stops when the
    relative residual :math:`\|A^*Av - \mathcal{N}^2 v\| / (\mathcal{N}^2
    \|v\|)` falls below :obj:`tol`. If it does not converge within
    :obj:`max_iters` steps and the instance has at most :obj:`dense_limit`
    atoms, a dense SVD is used instead; otherwise the best estimate is
    returned with :obj:`converged=False`.

    Args:
        params (KernelParams): Model parameters.
        sigma (DiscreteMeasure): The measure on the manifold.
        mu (UpperHalfMeasure): The measure on the upper half space.
        tol (float, optional): Residual tolerance. If :obj:`None`, then
            :obj:`twp.config.tol_norm` is used. (default: :obj:`None`)
        max_iters (int, optional): Maximum number of iterations. If
            :obj:`None`, then :obj:`twp.config.max_iters` is used.
            (default: :obj:`None`)
        adjoint (bool): If :obj:`True`, iterate on :math:`AA^*` instead, i.e.,
            compute the norm of :math:`P^*_\mu` from :math:`L^2(\mu)` to
            :math:`L^2(\sigma)`. (default: :obj:`False`)
        matrix (OperatorMatrix, optional): Precomputed kernel matrix.
            (default: :obj:`None`)
        dense_limit (int, optional): Largest number of atoms for the dense
            fallback. If :obj:`None`, then :obj:`twp.config.dense_limit` is
            used. (default: :obj:`None`)

    Returns:
        NormResult: The norm and the top singular pair.
    """
    if sigma.is_empty or mu.is_empty:
        raise ValueError("The operator norm needs nonempty measures.")
    tol = twp.config.tol_norm if tol is None else tol
    max_iters = twp.config.max_iters if max_iters is None else max_iters
    dense_limit = twp.config.dense_limit if dense_limit is None \
        else dense_limit
    if tol <= 0 or max_iters < 1:
        raise ValueError("tol must be positive and max_iters at least 1.")
    if matrix is None:
        matrix = OperatorMatrix(params, sigma, mu)
    a = matrix.weighted()
    if adjoint:
        a = a.T

    result = _power_iteration(a, tol, max_iters)
    if result.converged:
        logger.debug(f"Power iteration converged in {result.iterations} "
                     f"iterations (N={result.value:.6g}).")
    elif len(sigma) + len(mu) <= dense_limit:
        logger.info(f"Power iteration stopped at residual "
                    f"{result.residual:.2e} after {result.iterations} "
                    f"iterations, using dense SVD.")
        fallback = dense_norm(a)
        fallback.iterations = result.iterations
        result = fallback
    else:
        logger.warning(f"Power iteration did not converge: residual "
                       f"{result.residual:.2e} after {result.iterations} "
                       f"iterations.")
    if adjoint:
        result.left, result.right = result.right, result.left
    return result
