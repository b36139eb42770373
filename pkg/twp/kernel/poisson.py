r"""Model Poisson kernel of the manifold with two ends.

The kernel is defined as the exact right-hand side of the two-sided Poisson
kernel estimates. With :math:`d = d(x, y)` and

.. math::

    A = \frac{1}{t^m}\Big(\frac{t}{t + d}\Big)^{m+1},

the six cases read

* **KK**, **NK**, **NN**: :math:`A + t^{-n}(t/(t+d))^{n+1}`;
* **MK** (big end, junction): :math:`A + (t^n |x|^{m-2})^{-1}(t/(t+d))^{n+1}`;
* **MN** (:math:`x` on the big end, :math:`y` on the small end):
  :math:`A + (t^n |x|^{m-2})^{-1}(t/(t+d))^{n+1} +
  (t^m |y|^{n-2})^{-1}(t/(t+d))^{m+1}`;
* **MM**: :math:`A + (t^n |x|^{m-2}|y|^{m-2})^{-1}
  (t/(t+|x|+|y|))^{n+1}`.

Mirror pairs are resolved so that the kernel is symmetric: the big-end point
always takes the :math:`|x|` slot (:obj:`mirror_rule='by-end'`), or the MN
expression is averaged with its literal argument swap
(:obj:`mirror_rule='average'`).
"""
from typing import List, Optional, Tuple

import numpy as np

import twp
from twp.model.ends import BIG
from twp.model.geometry import pairwise_distance
from twp.model.params import KernelParams
from twp.model.point import Point
from twp.typing import MirrorRule

from .cases import KernelCase, case_codes, dispatch

__all__ = ['kernel_matrix', 'poisson', 'poisson_terms']


def _check_t(t: np.ndarray):
    if np.any(~(t > 0)):
        raise ValueError("The semigroup parameter t must be positive.")


def _resolve_rule(mirror_rule: Optional[str]) -> str:
    rule = mirror_rule or twp.config.mirror_rule
    if rule not in ('by-end', 'average'):
        raise ValueError(f"Unknown mirror rule '{rule}'.")
    return rule


def _terms(params: KernelParams, t, d, n_big, n_other, n_x, n_y):
    """All the summands appearing in the six cases, broadcast together."""
    m, n = params.m, params.n
    ratio = t / (t + d)
    near_m = ratio**(m + 1) / t**m
    near_n = ratio**(n + 1) / t**n
    return dict(
        near_m=near_m,
        near_n=near_n,
        big_n=near_n / n_big**(m - 2),
        small_m=near_m / n_other**(n - 2),
        # literal swap of the MN expression, used by the averaging rule
        swap_n=near_n / n_other**(m - 2),
        swap_m=near_m / n_big**(n - 2),
        both=(t / (t + (n_x + n_y)))**(n + 1) / t**n /
        (n_x**(m - 2) * n_y**(m - 2)),
    )


def kernel_matrix(params: KernelParams,
                  t: np.ndarray,
                  x_ends: np.ndarray,
                  x_s: np.ndarray,
                  y_ends: np.ndarray,
                  y_s: np.ndarray,
                  mirror_rule: Optional[MirrorRule] = None) -> np.ndarray:
    r"""Assemble the kernel :math:`P_t(x, y)` over all pairs of points.

    Rows are indexed by the points :math:`x` (each with its own height
    :math:`t`), columns by the points :math:`y`.

    Args:
        params (KernelParams): Model parameters.
        t (np.ndarray): Heights, one per row (or a scalar).
        x_ends (np.ndarray): End codes of the row points.
        x_s (np.ndarray): Profile coordinates of the row points.
        y_ends (np.ndarray): End codes of the column points.
        y_s (np.ndarray): Profile coordinates of the column points.
        mirror_rule (str, optional): Symmetrization of the MN case, either
            :obj:`'by-end'` or :obj:`'average'`. If :obj:`None`, then
            :obj:`twp.config.mirror_rule` is used. (default: :obj:`None`)

    Returns:
        np.ndarray: The :obj:`(len(x), len(y))` kernel matrix.
    """
    rule = _resolve_rule(mirror_rule)
    x_ends = np.asarray(x_ends).reshape(-1, 1)
    x_s = np.asarray(x_s, dtype=float).reshape(-1, 1)
    y_ends = np.asarray(y_ends).reshape(1, -1)
    y_s = np.asarray(y_s, dtype=float).reshape(1, -1)
    t = np.broadcast_to(np.asarray(t, dtype=float).reshape(-1, 1),
                        x_s.shape)
    _check_t(t)

    d = pairwise_distance(x_ends, x_s, y_ends, y_s)
    n_x, n_y = 1. + x_s, 1. + y_s
    x_big = x_ends == BIG
    n_big = np.where(x_big, n_x, n_y)
    n_other = np.where(x_big, n_y, n_x)
    terms = _terms(params, t, d, n_big, n_other, n_x, n_y)

    mn = terms['near_m'] + terms['big_n'] + terms['small_m']
    if rule == 'average':
        mn_swap = terms['near_m'] + terms['swap_n'] + terms['swap_m']
        mn = 0.5 * (mn + mn_swap)
    case = case_codes(x_ends, y_ends)
    return np.select(
        [
            case == KernelCase.MK,
            case == KernelCase.MN,
            case == KernelCase.MM,
        ],
        [
            terms['near_m'] + terms['big_n'],
            mn,
            terms['near_m'] + terms['both'],
        ],
        # KK, NK and NN share one expression
        default=terms['near_m'] + terms['near_n'])


def poisson(params: KernelParams,
            t: float,
            x: Point,
            y: Point,
            mirror_rule: Optional[MirrorRule] = None) -> float:
    """Evaluate the model Poisson kernel :math:`P_t(x, y)`.

    Raises:
        ValueError: If :obj:`t` is not positive.
    """
    value = kernel_matrix(params, [t], [x.end.code], [x.s], [y.end.code],
                          [y.s], mirror_rule=mirror_rule)
    return float(value[0, 0])


def poisson_terms(
        params: KernelParams,
        t: float,
        x: Point,
        y: Point,
        mirror_rule: Optional[MirrorRule] = None
) -> Tuple[KernelCase, bool, List[Tuple[str, float]]]:
    """The case of the pair, whether it is mirrored and the list of named
    summands whose sum is :func:`poisson`."""
    rule = _resolve_rule(mirror_rule)
    _check_t(np.asarray(t))
    case, mirrored = dispatch(x.end, y.end)
    d = pairwise_distance(x.end.code, x.s, y.end.code, y.s)
    n_x, n_y = 1. + x.s, 1. + y.s
    n_big, n_other = (n_x, n_y) if x.end.code == BIG else (n_y, n_x)
    terms = {
        k: float(v)
        for k, v in _terms(params, float(t), d, n_big, n_other, n_x,
                           n_y).items()
    }
    if case is KernelCase.MK:
        names = ['near_m', 'big_n']
    elif case is KernelCase.MM:
        names = ['near_m', 'both']
    elif case is KernelCase.MN:
        names = ['near_m', 'big_n', 'small_m']
        if rule == 'average':
            summands = [(k, 0.5 * terms[k]) for k in names]
            summands += [('near_m', 0.5 * terms['near_m']),
                         ('swap_n', 0.5 * terms['swap_n']),
                         ('swap_m', 0.5 * terms['swap_m'])]
            return case, mirrored, summands
    else:
        names = ['near_m', 'near_n']
    return case, mirrored, [(k, terms[k]) for k in names]
