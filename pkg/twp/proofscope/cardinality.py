import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Optional

from twp import logger
from twp.errors import InvariantViolation

from .ladder import LevelSetLadder
from .principal import PrincipalForest

__all__ = ['CardinalityReport', 'cardinality_check']


@dataclass
class CardinalityReport:
    r"""Counts of the stopping data.

    Args:
        delta (float): Stopping threshold :math:`\delta`.
        bound (int): :math:`\lceil 1/\delta \rceil`.
        counts (dict): Number of levels :math:`k` at which each cube is
            flagged, keyed by cube id.
        principal_counts (dict): For each principal cube :math:`G`, the
            number of levels :math:`k` with a flagged :math:`(k, I)`, a
            neighbor :math:`I_\theta` of :math:`I` and a cube
            :math:`J \in \mathcal{I}_{k+\ell+1}` inside :math:`I_\theta`
            such that :math:`\pi(J) = G \subsetneq \pi(I_\theta)`.
    """
    delta: float
    bound: int
    counts: Dict[str, int] = field(default_factory=dict)
    principal_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def max_principal_count(self) -> int:
        return max(self.principal_counts.values(), default=0)

    @property
    def passed(self) -> bool:
        return self.max_count <= self.bound

    def to_dict(self) -> dict:
        return dict(delta=self.delta,
                    bound=self.bound,
                    max_count=self.max_count,
                    counts=self.counts,
                    max_principal_count=self.max_principal_count,
                    principal_counts=self.principal_counts,
                    passed=self.passed)


def _principal_counts(ladder: LevelSetLadder,
                      forest: PrincipalForest) -> Dict[str, int]:
    levels = defaultdict(set)
    for entry in ladder.stopping.flagged():
        finer = ladder.family(entry.k + ladder.ell + 1)
        for neighbor in entry.cube.neighbors():
            top = forest.principal_ancestor(neighbor)
            for cube in finer:
                if not neighbor.contains_cube(cube):
                    continue
                g = forest.principal_ancestor(cube)
                if g != top:
                    levels[g].add(entry.k)
    return {g.id: len(ks) for g, ks in levels.items()}


def cardinality_check(ladder: LevelSetLadder,
                      forest: Optional[PrincipalForest] = None,
                      strict: bool = True) -> CardinalityReport:
    r"""Count, for every cube :math:`I`, the levels :math:`k` at which
    :math:`(k, I)` is flagged. The sets :math:`F_k(I)` are disjoint, so at
    most :math:`\lceil 1/\delta \rceil` levels can carry a
    :math:`\delta`-fraction of :math:`\sigma(I)`.

    When :obj:`forest` is given, the number of levels attached to each
    principal cube is reported as well; this count is empirical.

    Raises:
        InvariantViolation: If :obj:`strict` and a cube is flagged at more
            than :math:`\lceil 1/\delta \rceil` levels.
    """
    # 1/delta can be a float a hair above an integer
    bound = math.ceil(1. / ladder.delta - 1e-12)
    counts = {c.id: n for c, n in ladder.stopping.flag_counts().items()}
    report = CardinalityReport(ladder.delta, bound, counts)
    if forest is not None:
        report.principal_counts = _principal_counts(ladder, forest)
    logger.info(f"Flag counts: max {report.max_count} (bound {bound}), "
                f"principal max {report.max_principal_count}.")
    if not report.passed:
        worst = max(counts, key=counts.get)
        msg = f"Cube {worst} flagged at {counts[worst]} levels, more than " \
              f"ceil(1/delta) = {bound}."
        if strict:
            raise InvariantViolation(msg)
        logger.error(msg)
    return report
