from typing import Optional

import numpy as np

import twp
from twp import logger
from twp.kernel.pieces import PIECES, KernelPieceId
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams

from .cardinality import cardinality_check
from .ladder import default_split, ladder, split_phi
from .principal import principal_cubes
from .principles import ell_shift, maximal_principle_check, t_linearity_check

__all__ = ['run_proofscope']


def run_proofscope(params: KernelParams,
                   sigma: DiscreteMeasure,
                   mu: UpperHalfMeasure,
                   piece_id=(1, 1),
                   phi: Optional[np.ndarray] = None,
                   split: Optional[int] = None,
                   delta: Optional[float] = None,
                   samples: int = 10_000,
                   seed: Optional[int] = 0) -> dict:
    r"""Run every check of the stopping-time construction on one instance
    and collect the outcomes in a JSON-serializable report.

    The sampled kernel inequalities, the ladder invariants (nesting,
    disjointness of the stopping sets, telescoping, absorption), the
    Carleson bound of the principal cubes and the per-cube flag count are
    exact statements: the report's :obj:`passed` is :obj:`False` as soon as
    one of them fails, and the failures are listed under :obj:`failures`.
    The observed ratios of the maximal principle for the potential and the
    counts attached to principal cubes are reported only.

    Args:
        params (KernelParams): Model parameters.
        sigma (DiscreteMeasure): The measure on the manifold.
        mu (UpperHalfMeasure): The measure on the upper half space.
        piece_id: The kernel piece. (default: :obj:`(1, 1)`)
        phi (np.ndarray, optional): Values of :math:`\phi` at the
            :math:`\mu`-atoms. If :obj:`None`, then :math:`\phi \equiv 1`.
            (default: :obj:`None`)
        split (int, optional): Piece of the manifold carrying
            :math:`\phi_e`. (default: :obj:`None`)
        delta (float, optional): Stopping threshold. (default: :obj:`None`)
        samples (int): Configurations of each sampled inequality.
            (default: :obj:`10_000`)
        seed (int, optional): Seed of the sampler. (default: :obj:`0`)
    """
    sigma.check_support(params)
    mu.check_support(params)
    pid = KernelPieceId.parse(piece_id)
    spec = PIECES[pid]
    phi = np.ones(len(mu)) if phi is None else np.asarray(phi, dtype=float)
    split = default_split(pid) if split is None else split
    delta = twp.config.delta if delta is None else delta
    failures = []

    principle = maximal_principle_check(params, pid, samples, seed)
    linearity = t_linearity_check(params, pid, samples, seed)
    for name, check in (('maximal_principle', principle),
                        ('t_linearity', linearity)):
        if not check.passed:
            failures.append(name)

    levels = ladder(params, sigma, mu, phi, pid, split=split, delta=delta)
    levels_report = levels.to_dict()
    for key in ('nested', 'disjoint_stopping'):
        if not levels_report[key]:
            failures.append(key)
    for key in ('telescoping', 'absorption'):
        if not levels_report[key]['holds']:
            failures.append(key)

    phi_e = split_phi(mu, phi, split)
    forest = principal_cubes(params, mu, phi_e, strict=False)
    forest_report = forest.to_dict()
    if not forest_report['carleson_holds']:
        failures.append('carleson')
    if not forest_report['alpha_bound_holds']:
        failures.append('alpha_bound')

    counts = cardinality_check(levels, forest, strict=False).to_dict()
    if not counts['passed']:
        failures.append('cardinality')

    if failures:
        logger.error(f"Proofscope checks failed for piece {pid}: "
                     f"{', '.join(failures)}.")
    return dict(params=params.to_dict(),
                piece=str(pid),
                split=split,
                delta=delta,
                constant=spec.constant(params),
                ell_shift=ell_shift(spec.constant(params)),
                n_sigma=len(sigma),
                n_mu=len(mu),
                maximal_principle=principle.to_dict(),
                t_linearity=linearity.to_dict(),
                ladder=levels_report,
                principal=forest_report,
                cardinality=counts,
                failures=failures,
                passed=not failures)
