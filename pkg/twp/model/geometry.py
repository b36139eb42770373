from typing import Iterable, List

import numpy as np

from .ends import EndTag
from .params import KernelParams
from .point import Point

__all__ = [
    'pairwise_distance', 'distance', 'norm_of', 'ball_volume',
    'doubling_ratios'
]


def pairwise_distance(ends_a: np.ndarray, s_a: np.ndarray,
                      ends_b: np.ndarray, s_b: np.ndarray) -> np.ndarray:
    r"""Geodesic distance of the profile model, broadcasting over the inputs.

    Two points on the same end are at distance :math:`|s_a - s_b|`, points on
    different ends (junction included) at distance :math:`s_a + s_b`.

    Args:
        ends_a (np.ndarray): End codes of the first points.
        s_a (np.ndarray): Profile coordinates of the first points.
        ends_b (np.ndarray): End codes of the second points.
        s_b (np.ndarray): Profile coordinates of the second points.

    Returns:
        np.ndarray: The broadcast array of distances.
    """
    same = np.asarray(ends_a) == np.asarray(ends_b)
    s_a, s_b = np.asarray(s_a, dtype=float), np.asarray(s_b, dtype=float)
    return np.where(same, np.abs(s_a - s_b), s_a + s_b)


def distance(p: Point, q: Point) -> float:
    """Geodesic distance between two points."""
    return float(
        pairwise_distance(p.end.code, p.s, q.end.code, q.s))


def norm_of(p: Point) -> float:
    r"""The quantity :math:`|x| = 1 + d(x, K)`, always at least one."""
    return 1. + p.s


def ball_volume(p: Point, r: float, params: KernelParams) -> float:
    r"""Model volume :math:`V(x, r)` of the ball of radius :math:`r`.

    Small balls grow like :math:`r^m`; balls of radius larger than one grow
    like :math:`r^n` as long as they stay inside the small end and like
    :math:`r^m` otherwise.
    """
    if r <= 0:
        raise ValueError(f"Radius must be positive, got {r}.")
    if r <= 1:
        return r**params.m
    # the open ball misses the junction iff r <= d(p, K)
    if p.end is EndTag.SMALL and r <= p.s:
        return r**params.n
    return r**params.m


def doubling_ratios(params: KernelParams,
                    radii: Iterable[float] = None) -> List[dict]:
    r"""Witness of the failure of the doubling condition.

    For :math:`x = (\text{small}, r)` the ball :math:`B(x, r)` stays in the
    small end while :math:`B(x, 2r)` reaches the big one, so
    :math:`V(x,2r)/V(x,r) = 2^m r^{m-n}` is unbounded in :math:`r`.

    Args:
        params (KernelParams): Model parameters.
        radii (Iterable, optional): Radii to tabulate. If :obj:`None`, then
            :math:`2, 4, \dots, S` are used. (default: :obj:`None`)

    Returns:
        list: One record per radius with both volumes, their ratio and the
        reference growth :math:`r^{m-n}`.
    """
    if radii is None:
        radii = [2.**k for k in range(1, int(np.log2(params.S)) + 1)]
    rows = []
    for r in radii:
        x = Point(EndTag.SMALL, r)
        v1, v2 = ball_volume(x, r, params), ball_volume(x, 2 * r, params)
        rows.append(
            dict(r=float(r),
                 volume=v1,
                 volume_double=v2,
                 ratio=v2 / v1,
                 growth=float(r)**(params.m - params.n)))
    return rows
