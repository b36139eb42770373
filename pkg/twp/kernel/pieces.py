r"""Pieces :math:`P_{t,i,j}` of the kernel used in the sufficiency argument.

The test function on :math:`M_+` is split along the three pieces of the
manifold and each term of the resulting bilinear form is estimated with one
summand of the kernel. Every piece is written as :math:`P_{t,i,j}(y, x)` where
:math:`(y, t)` is the point of the upper half space (the side of
:math:`\mu`) and :math:`x` the point of the manifold (the side of
:math:`\sigma`). The structurally distinct pieces are

* (1,1): :math:`t^{-m}(t/(t+d))^{m+1}`, shared by all the terms;
* (1,2): :math:`(t^n|y|^{m-2}|x|^{m-2})^{-1}(t/(t+|y|+|x|))^{n+1}`;
* (2,2): :math:`(t^n|y|^{m-2})^{-1}(t/(t+d))^{n+1}`;
* (2,3): :math:`(t^m|x|^{n-2})^{-1}(t/(t+d))^{m+1}`;
* (4,2): :math:`(t^n|x|^{m-2})^{-1}(t/(t+d))^{n+1}`;
* (4,3): :math:`(t^m|y|^{n-2})^{-1}(t/(t+d))^{m+1}`.
"""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, NamedTuple, Union

import numpy as np

from twp.model.ends import BIG, JUNCTION, SMALL, EndTag
from twp.model.geometry import pairwise_distance
from twp.model.params import KernelParams
from twp.model.point import Point

__all__ = [
    'KernelPieceId', 'PieceSpec', 'PIECES', 'piece_formula', 'piece_matrix',
    'piece', 't_comparability_constant'
]


class KernelPieceId(NamedTuple):
    i: int
    j: int

    def __str__(self):
        return f'{self.i},{self.j}'

    @classmethod
    def parse(cls, value: Union[str, tuple, 'KernelPieceId']):
        """Parse :obj:`'1,2'`, :obj:`(1, 2)` or a :class:`KernelPieceId`."""
        if isinstance(value, str):
            value = tuple(int(v) for v in value.replace('(', '').replace(
                ')', '').split(','))
        pid = cls(*value)
        if pid not in PIECES:
            raise ValueError(f"Unknown kernel piece {tuple(pid)}, use one of "
                             f"{[tuple(p) for p in PIECES]}.")
        return pid


@dataclass(frozen=True)
class PieceSpec:
    """End-domains of a piece and the constant of its maximal principle.

    Args:
        id (KernelPieceId): The piece.
        mu_ends (frozenset): End codes allowed for the point :math:`y`.
        x_ends (frozenset): End codes allowed for the point :math:`x`.
        away_from_junction (bool): Whether the maximal principle needs
            :math:`d(x, K) \\geq \\ell(I)`.
        constant (callable): Maximal-principle constant as a function of
            :class:`~twp.model.KernelParams`.
    """
    id: KernelPieceId
    mu_ends: FrozenSet[int]
    x_ends: FrozenSet[int]
    away_from_junction: bool
    constant: Callable[[KernelParams], float]


_ALL = frozenset({BIG, SMALL, JUNCTION})

PIECES: Dict[KernelPieceId, PieceSpec] = {
    spec.id: spec
    for spec in [
        PieceSpec(KernelPieceId(1, 1), _ALL, _ALL, False,
                  lambda p: 4.**(p.m + 1)),
        PieceSpec(KernelPieceId(1, 2), frozenset({BIG}), frozenset({BIG}),
                  True, lambda p: 4.**(p.m + p.n - 1)),
        PieceSpec(KernelPieceId(2, 2), frozenset({BIG}),
                  frozenset({SMALL, JUNCTION}), True,
                  lambda p: 4.**(p.n + 1)),
        PieceSpec(KernelPieceId(2, 3), frozenset({BIG}), frozenset({SMALL}),
                  True, lambda p: 4.**(p.m + p.n - 1)),
        PieceSpec(KernelPieceId(4, 2), frozenset({SMALL, JUNCTION}),
                  frozenset({BIG}), True, lambda p: 4.**(p.m + p.n - 1)),
        PieceSpec(KernelPieceId(4, 3), frozenset({SMALL}), frozenset({BIG}),
                  True, lambda p: 4.**(p.m + 1)),
    ]
}


def t_comparability_constant(params: KernelParams) -> float:
    r"""Constant :math:`c = 2^{m+1}` of the linear behaviour in :math:`t` of
    the pieces on Carleson boxes."""
    return 2.**(params.m + 1)


def piece_formula(params: KernelParams, piece_id, t, d, norm_x, norm_y):
    """Raw formula of a piece in terms of :math:`t`, :math:`d(x,y)`,
    :math:`|x|` and :math:`|y|`, without checking end-domains."""
    pid = KernelPieceId.parse(piece_id)
    m, n = params.m, params.n
    t, d = np.asarray(t, dtype=float), np.asarray(d, dtype=float)
    norm_x = np.asarray(norm_x, dtype=float)
    norm_y = np.asarray(norm_y, dtype=float)
    ratio = t / (t + d)
    if pid == (1, 1):
        return ratio**(m + 1) / t**m
    if pid == (1, 2):
        return (t / (t + (norm_y + norm_x)))**(n + 1) / t**n / \
            (norm_y**(m - 2) * norm_x**(m - 2))
    if pid == (2, 2):
        return ratio**(n + 1) / t**n / norm_y**(m - 2)
    if pid == (2, 3):
        return ratio**(m + 1) / t**m / norm_x**(n - 2)
    if pid == (4, 2):
        return ratio**(n + 1) / t**n / norm_x**(m - 2)
    # (4, 3)
    return ratio**(m + 1) / t**m / norm_y**(n - 2)


def piece_matrix(params: KernelParams, piece_id, t: np.ndarray,
                 mu_ends: np.ndarray, mu_s: np.ndarray, x_ends: np.ndarray,
                 x_s: np.ndarray) -> np.ndarray:
    """Assemble :math:`P_{t,i,j}(y, x)` with rows indexed by the points
    :math:`(y, t)` and columns by the points :math:`x`.

    Raises:
        ValueError: If a point lies outside the end-domain of the piece or
            some :math:`t` is not positive.
    """
    spec = PIECES[KernelPieceId.parse(piece_id)]
    mu_ends = np.asarray(mu_ends).reshape(-1, 1)
    x_ends = np.asarray(x_ends).reshape(1, -1)
    if not np.isin(mu_ends, list(spec.mu_ends)).all():
        raise ValueError(f"Piece {spec.id} requires y on "
                         f"{_names(spec.mu_ends)}.")
    if not np.isin(x_ends, list(spec.x_ends)).all():
        raise ValueError(f"Piece {spec.id} requires x on "
                         f"{_names(spec.x_ends)}.")
    mu_s = np.asarray(mu_s, dtype=float).reshape(-1, 1)
    x_s = np.asarray(x_s, dtype=float).reshape(1, -1)
    t = np.asarray(t, dtype=float).reshape(-1, 1)
    if np.any(~(t > 0)):
        raise ValueError("The semigroup parameter t must be positive.")
    d = pairwise_distance(mu_ends, mu_s, x_ends, x_s)
    return piece_formula(params, spec.id, t, d, 1. + x_s, 1. + mu_s)


def piece(params: KernelParams, piece_id, t: float, x: Point,
          y: Point) -> float:
    """Evaluate the piece :math:`P_{t,i,j}(y, x)` at a point :math:`x` of
    the manifold and a point :math:`(y, t)` of the upper half space.

    Raises:
        ValueError: If :obj:`x` or :obj:`y` lie outside the end-domain of the
            piece (e.g., (1,2) requires both on the big end), or :obj:`t` is
            not positive.
    """
    value = piece_matrix(params, piece_id, [t], [y.end.code], [y.s],
                         [x.end.code], [x.s])
    return float(value[0, 0])


def _names(codes) -> str:
    return '/'.join(sorted(EndTag.from_code(c).value for c in codes))
