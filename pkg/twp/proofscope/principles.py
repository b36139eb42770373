"""Pointwise kernel inequalities behind the maximal principle and the linear
behaviour in :math:`t` on Carleson boxes, checked on random admissible
configurations."""
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from twp import logger
from twp.kernel.pieces import (PIECES, KernelPieceId, piece_formula,
                               t_comparability_constant)
from twp.model.ends import BIG, JUNCTION, EndTag
from twp.model.geometry import pairwise_distance
from twp.model.params import KernelParams

__all__ = [
    'PrincipleReport', 'ell_shift', 'maximal_principle_check',
    't_linearity_check', 'default_x_end'
]


@dataclass
class PrincipleReport:
    """Outcome of a sampled kernel inequality.

    Args:
        name (str): The checked inequality.
        piece (str): The kernel piece.
        constant (float): The asserted constant.
        samples (int): Requested number of admissible configurations.
        evaluated (int): Admissible configurations evaluated.
        skipped (int): Drawn configurations rejected as not admissible.
        max_ratio (float): Largest observed ratio.
        min_ratio (float): Smallest observed ratio.
        passed (bool): Whether every ratio is within the constant.
        worst (dict): Configuration attaining :obj:`max_ratio`.
    """
    name: str
    piece: str
    constant: float
    samples: int
    evaluated: int
    skipped: int
    max_ratio: float
    min_ratio: float
    passed: bool
    worst: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def ell_shift(constant: float) -> int:
    r"""Smallest integer :math:`\ell` with :math:`2^\ell > C + 1`."""
    ell = max(0, int(math.floor(math.log2(constant + 1))))
    while 2**ell <= constant + 1:
        ell += 1
    return ell


def default_x_end(piece_id, split_end: Optional[EndTag] = None) -> EndTag:
    """End on which the potential of a piece is evaluated."""
    spec = PIECES[KernelPieceId.parse(piece_id)]
    if spec.id == (1, 1):
        if split_end is not None and EndTag.parse(split_end).is_end:
            return EndTag.parse(split_end)
        return EndTag.BIG
    return EndTag.BIG if BIG in spec.x_ends else EndTag.SMALL


def _log_uniform(rng, lo, hi, size):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size))


def _draw_cubes(rng, params: KernelParams, size: int, interior: bool):
    level = rng.integers(0, params.L + 1, size)
    length = params.S * 2.**-level
    lo = 1 if interior else 0
    # level 0 has no cube away from the junction
    valid = 2**level > lo
    index = np.floor(lo + rng.random(size) *
                     np.maximum(2**level - lo, 1)).astype(int)
    return level, index, length, valid


def _mu_ends(rng, spec, x_code: int, size: int) -> np.ndarray:
    if spec.id == (1, 1):
        return np.full(size, x_code)
    return rng.choice(sorted(spec.mu_ends), size=size)


def _report(name, spec, constant, samples, ratio, skipped, config, lower):
    if len(ratio) == 0:
        return PrincipleReport(name, str(spec.id), constant, samples, 0,
                               skipped, float('nan'), float('nan'), False)
    worst = int(np.argmax(ratio))
    passed = bool(np.all(ratio <= constant) and np.all(ratio >= lower))
    return PrincipleReport(name,
                           str(spec.id),
                           constant,
                           samples,
                           int(len(ratio)),
                           int(skipped),
                           float(ratio.max()),
                           float(ratio.min()),
                           passed,
                           worst={k: v[worst].item()
                                  for k, v in config.items()})


def maximal_principle_check(params: KernelParams,
                            piece_id=(1, 1),
                            samples: int = 10_000,
                            seed: Optional[int] = None,
                            x_end: Optional[EndTag] = None,
                            max_rounds: int = 50) -> PrincipleReport:
    r"""Sample the pointwise inequality of the maximal principle

    .. math::

        P_{t,i,j}(y, x) \leq C \, P_{t,i,j}(y, z)

    for :math:`x \in I`, :math:`\ell(I) < d(z, x) < 3\ell(I)` and
    :math:`(y, t) \notin 3I \times [0, 3\ell(I)]`. The constant is
    :math:`4^{m+1}` for the piece (1,1); for the other pieces it follows from
    :math:`|z| \leq 4|x|`, which holds since :math:`d(x, K) \geq \ell(I)` for
    the cubes of a Whitney family of a subset of an end.

    Args:
        params (KernelParams): Model parameters.
        piece_id: The kernel piece. (default: :obj:`(1, 1)`)
        samples (int): Number of admissible configurations.
            (default: :obj:`10_000`)
        seed (int, optional): Seed of the random number generator.
            (default: :obj:`None`)
        x_end (EndTag, optional): End of :math:`x` and :math:`z`.
            (default: :obj:`None`)
        max_rounds (int): Maximum number of rejection-sampling rounds.
            (default: :obj:`50`)
    """
    spec = PIECES[KernelPieceId.parse(piece_id)]
    constant = spec.constant(params)
    x_end = EndTag.parse(x_end) if x_end is not None else \
        default_x_end(spec.id)
    rng = np.random.default_rng(seed)
    S, res = params.S, params.resolution
    chunks, skipped = [], 0
    evaluated = 0
    for _ in range(max_rounds):
        if evaluated >= samples:
            break
        level, index, length, valid = _draw_cubes(rng, params, samples,
                                                  spec.away_from_junction)
        s_x = (index + rng.random(samples)) * length
        gap = rng.uniform(1, 3, samples) * length
        sign = rng.choice([-1., 1.], samples)
        s_z = s_x + sign * gap
        s_z = np.where((s_z > 0) & (s_z <= S), s_z, s_x - sign * gap)
        valid &= (s_z > 0) & (s_z <= S) & (gap > length) & (gap < 3 * length)
        y_end = _mu_ends(rng, spec, x_end.code, samples)
        s_y = np.where(y_end == JUNCTION, 0., _log_uniform(rng, res, S,
                                                           samples))
        t = _log_uniform(rng, res / 4, 4 * S, samples)
        # (y, t) must lie outside 3I x [0, 3l(I)]
        left = np.maximum(0., index * length - length)
        right = np.minimum(S, (index + 2) * length)
        in_triple = (y_end == x_end.code) & (s_y >= left) & (s_y < right)
        valid &= ~(in_triple & (t <= 3 * length))
        skipped += int((~valid).sum())
        keep = np.flatnonzero(valid)[:samples - evaluated]
        evaluated += len(keep)
        chunks.append(
            dict(level=level[keep],
                 index=index[keep],
                 s_x=s_x[keep],
                 s_z=s_z[keep],
                 y_end=y_end[keep],
                 s_y=s_y[keep],
                 t=t[keep]))
    config = {k: np.concatenate([c[k] for c in chunks]) for k in chunks[0]}
    if evaluated < samples:
        logger.warning(f"Only {evaluated}/{samples} admissible "
                       f"configurations drawn for piece {spec.id}.")
    logger.debug(f"Skipped {skipped} inadmissible configurations for piece "
                 f"{spec.id}.")

    def value(s_point):
        d = pairwise_distance(config['y_end'], config['s_y'], x_end.code,
                              s_point)
        return piece_formula(params, spec.id, config['t'], d, 1. + s_point,
                             1. + config['s_y'])

    ratio = value(config['s_x']) / value(config['s_z'])
    config['x_end'] = np.full(len(ratio), x_end.code)
    return _report('maximal_principle', spec, constant, samples, ratio,
                   skipped, config, lower=0.)


def t_linearity_check(params: KernelParams,
                      piece_id=(1, 1),
                      samples: int = 10_000,
                      seed: Optional[int] = None,
                      x_end: Optional[EndTag] = None,
                      max_rounds: int = 50) -> PrincipleReport:
    r"""Sample the linear behaviour in :math:`t` of a piece on Carleson
    boxes,

    .. math::

        \frac{1}{c}\frac{t}{\ell} P_{\ell,i,j}(y, x) \leq P_{t,i,j}(y, x)
        \leq c \frac{t}{\ell} P_{\ell,i,j}(y, x), \qquad c = 2^{m+1},

    for :math:`0 < t \leq \ell` and :math:`d(x, y) \geq \ell` (for the piece
    (1,2), :math:`d(x, K) \geq \ell` instead)."""
    spec = PIECES[KernelPieceId.parse(piece_id)]
    c = t_comparability_constant(params)
    x_end = EndTag.parse(x_end) if x_end is not None else \
        default_x_end(spec.id)
    rng = np.random.default_rng(seed)
    S, res = params.S, params.resolution
    chunks, skipped, evaluated = [], 0, 0
    for _ in range(max_rounds):
        if evaluated >= samples:
            break
        level = rng.integers(0, params.L + 1, samples)
        ell = S * 2.**-level
        t = ell * 2.**-rng.uniform(0, 10, samples)
        s_x = rng.uniform(0, S, samples)
        y_end = _mu_ends(rng, spec, x_end.code, samples)
        s_y = np.where(y_end == JUNCTION, 0., rng.uniform(0, S, samples))
        d = pairwise_distance(y_end, s_y, x_end.code, s_x)
        if spec.id == (1, 2):
            valid = s_x >= ell
        else:
            valid = d >= ell
        valid &= s_x > 0
        skipped += int((~valid).sum())
        keep = np.flatnonzero(valid)[:samples - evaluated]
        evaluated += len(keep)
        chunks.append(
            dict(ell=ell[keep], t=t[keep], s_x=s_x[keep], y_end=y_end[keep],
                 s_y=s_y[keep], d=d[keep]))
    config = {k: np.concatenate([ch[k] for ch in chunks]) for k in chunks[0]}

    def value(height):
        return piece_formula(params, spec.id, height, config['d'],
                             1. + config['s_x'], 1. + config['s_y'])

    ratio = value(config['t']) / (config['t'] / config['ell'] *
                                  value(config['ell']))
    return _report('t_linearity', spec, c, samples, ratio, skipped, config,
                   lower=1. / c)

