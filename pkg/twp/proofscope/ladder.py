r"""Level-set ladder of the dual potential and its stopping data.

For a nonnegative :math:`\phi` on the atoms of :math:`\mu`, restricted to one
piece of the manifold, the potential :math:`v = P^*_{\mu,i,j}(\phi)` is
evaluated at the centers of the finest cells of one end. Its level sets

.. math::

    \Omega_k = \{x : v(x) > 2^k\}

are nested unions of cells, decomposed into Whitney families
:math:`\mathcal{I}_k`. For :math:`I \in \mathcal{I}_k` the stopping set is
:math:`F_k(I) = I \cap (\Omega_{k+\ell} \setminus \Omega_{k+\ell+1})` and
the pair :math:`(k, I)` is flagged when :math:`\sigma(F_k(I)) \geq
\delta \sigma(I)`.
"""
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

import twp
from twp import logger
from twp.dyadic.cubes import DyadicCube, box3, cell_span
from twp.dyadic.whitney import OpenSet, WhitneyFamily, whitney
from twp.kernel.pieces import PIECES, KernelPieceId, piece_matrix
from twp.model.ends import EndTag
from twp.model.measures import DiscreteMeasure, UpperHalfMeasure
from twp.model.params import KernelParams
from twp.typing import EndSplit

from .principles import default_x_end, ell_shift

__all__ = [
    'SPLIT_ENDS', 'StoppingEntry', 'StoppingData', 'LevelSetLadder', 'ladder',
    'split_phi', 'default_split'
]

SPLIT_ENDS = {1: EndTag.BIG, 2: EndTag.SMALL, 3: EndTag.JUNCTION}


def default_split(piece_id) -> int:
    """First piece of the manifold whose atoms the piece accepts."""
    spec = PIECES[KernelPieceId.parse(piece_id)]
    for split, end in SPLIT_ENDS.items():
        if end.code in spec.mu_ends:
            return split
    raise ValueError(f"No split is compatible with piece {spec.id}.")


def split_phi(mu: UpperHalfMeasure, phi: np.ndarray,
              split: EndSplit) -> np.ndarray:
    r""":math:`\phi_e = \phi 1_e` for the piece :obj:`split` (1 big, 2 small,
    3 junction).

    Raises:
        ValueError: If :obj:`phi` does not match :obj:`mu` or is negative.
    """
    if split not in SPLIT_ENDS:
        raise ValueError(f"Split must be one of {sorted(SPLIT_ENDS)}, "
                         f"got {split}.")
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (len(mu), ):
        raise ValueError(f"phi must have one value per mu-atom "
                         f"({len(mu)}), got shape {phi.shape}.")
    if np.any(~np.isfinite(phi)) or np.any(phi < 0):
        raise ValueError("phi must be finite and nonnegative.")
    return np.where(mu.end_mask(SPLIT_ENDS[split]), phi, 0.)


@dataclass
class StoppingEntry:
    """Stopping data of one pair :math:`(k, I)`; :obj:`cells` are the
    finest cells of :math:`F_k(I)`."""
    k: int
    cube: DyadicCube
    sigma_F: float
    sigma_I: float
    flagged: bool
    cells: np.ndarray

    def to_dict(self) -> dict:
        return dict(k=self.k,
                    cube=self.cube.id,
                    sigma_F=self.sigma_F,
                    sigma_I=self.sigma_I,
                    flagged=self.flagged)


class StoppingData:
    """All stopping entries of a ladder, grouped by level and by cube."""

    def __init__(self, entries: Optional[List[StoppingEntry]] = None):
        self.entries: List[StoppingEntry] = list(entries or [])

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def append(self, entry: StoppingEntry):
        self.entries.append(entry)

    def flagged(self) -> List[StoppingEntry]:
        return [e for e in self.entries if e.flagged]

    def by_cube(self) -> Dict[DyadicCube, List[StoppingEntry]]:
        out = defaultdict(list)
        for entry in self.entries:
            out[entry.cube].append(entry)
        return dict(out)

    def flag_counts(self) -> Dict[DyadicCube, int]:
        """Number of levels at which each cube is flagged."""
        out = defaultdict(int)
        for entry in self.flagged():
            out[entry.cube] += 1
        return dict(out)


@dataclass
class LevelSetLadder:
    r"""Level sets, Whitney families and stopping data of one potential.

    Args:
        params (KernelParams): Model parameters.
        piece (KernelPieceId): The kernel piece.
        split (int): Piece of the manifold carrying :math:`\phi_e`.
        x_end (EndTag): End on which the potential is evaluated.
        ell (int): Level shift :math:`\ell`.
        delta (float): Stopping threshold :math:`\delta`.
        values (np.ndarray): The potential at the cell centers.
        sigma_cells (np.ndarray): Mass of :math:`\sigma` on each cell of
            :obj:`x_end`.
        ks (list): Levels :math:`k` of the Whitney families.
        families (dict): Whitney family of :math:`\Omega_k` for each level.
        stopping (StoppingData): Stopping entries of all pairs
            :math:`(k, I)`.
        snapping (dict): Count and largest displacement of the
            :math:`\sigma`-atoms moved to cell centers.
    """
    params: KernelParams
    piece: KernelPieceId
    split: int
    x_end: EndTag
    ell: int
    delta: float
    values: np.ndarray
    sigma_cells: np.ndarray
    ks: List[int]
    families: Dict[int, WhitneyFamily] = field(default_factory=dict)
    stopping: StoppingData = field(default_factory=StoppingData)
    snapping: dict = field(default_factory=dict)
    # atoms in the support of phi_e only
    phi: Optional[np.ndarray] = None
    mu: Optional[UpperHalfMeasure] = None

    @property
    def constant(self) -> float:
        return PIECES[self.piece].constant(self.params)

    @property
    def centers(self) -> np.ndarray:
        return cell_centers(self.params)

    def omega_mask(self, k: int) -> np.ndarray:
        return self.values > 2.**k

    def omega(self, k: int) -> OpenSet:
        return OpenSet(self.params, {self.x_end: self.omega_mask(k)})

    def family(self, k: int) -> WhitneyFamily:
        """Whitney family of :math:`\\Omega_k`, also outside :attr:`ks`."""
        if k not in self.families:
            self.families[k] = whitney(self.omega(k))
        return self.families[k]

    def is_nested(self) -> bool:
        return all(not np.any(self.omega_mask(k + 1) & ~self.omega_mask(k))
                   for k in self.ks)

    def stopping_sets_disjoint(self) -> bool:
        r"""Whether :math:`F_k(I) \subset I` and the sets :math:`F_k(I)` of
        one cube are pairwise disjoint in :math:`k`."""
        for cube, entries in self.stopping.by_cube().items():
            a, b = cell_span(cube, self.params)
            seen = np.zeros(self.params.n_cells, dtype=int)
            for entry in entries:
                if np.any((entry.cells < a) | (entry.cells >= b)):
                    return False
                seen[entry.cells] += 1
            if seen.max(initial=0) > 1:
                return False
        return True

    def telescoping(self) -> dict:
        r"""Compare :math:`\sum_j 2^{2j} \sigma(\Omega_j \setminus
        \Omega_{j+1})` with :math:`\int v^2 d\sigma`; the two agree within a
        factor of 4."""
        integral = float(np.sum(self.sigma_cells * self.values**2))
        total = 0.
        if len(self.ks):
            for j in range(self.ks[0], self.ks[-1] + self.ell + 2):
                shell = self.omega_mask(j) & ~self.omega_mask(j + 1)
                total += 4.**j * float(self.sigma_cells[shell].sum())
        slack = twp.config.eps_num * integral
        holds = total <= integral + slack and integral <= 4 * total + slack
        return dict(ladder_sum=total, integral=integral, holds=bool(holds))

    def absorption(self) -> dict:
        r"""Absorption of the unflagged part,

        .. math::

            \sum_k 2^{2k} \sum_{I \in \mathcal{I}_k \text{ unflagged}}
            \sigma(F_k(I)) \leq \delta \sum_k 2^{2k} \sigma(\Omega_k).
        """
        unflagged = sum(4.**e.k * e.sigma_F for e in self.stopping
                        if not e.flagged)
        level_mass = sum(4.**k * float(self.sigma_cells[self.omega_mask(
            k)].sum()) for k in self.ks)
        bound = self.delta * level_mass
        holds = unflagged <= bound * (1 + twp.config.eps_num)
        return dict(unflagged=unflagged, bound=bound, holds=bool(holds))

    def operator_maximal_principle(self) -> dict:
        r"""Observed ratio :math:`\sup_{x \in I} P^*(\phi_e
        1_{(\widehat{3I})^c})(x) / 2^k` over the non-degenerate Whitney
        cubes, which the maximal principle bounds by the piece constant."""
        if self.mu is None or self.phi is None:
            return dict(max_ratio=None, checked=0, skipped=0, holds=None)
        spec = PIECES[self.piece]
        centers = self.centers
        kernel = _kernel(self.params, self.piece, self.mu, self.x_end,
                         centers)
        density = self.phi * self.mu.weights
        best, checked, skipped = 0., 0, 0
        for k in self.ks:
            family = self.families.get(k)
            if family is None:
                continue
            for cube in family:
                if cube.end in family.degenerate or (spec.away_from_junction
                                                     and cube.index == 0):
                    skipped += 1
                    continue
                inside = box3(cube, 'hat-of-triple').contains(
                    self.mu.ends, self.mu.s, self.mu.t)
                a, b = cell_span(cube, self.params)
                outer = np.where(inside, 0., density) @ kernel[:, a:b]
                best = max(best, float(outer.max(initial=0.)) / 2.**k)
                checked += 1
        holds = best <= self.constant * (1 + twp.config.eps_num)
        return dict(max_ratio=best,
                    constant=self.constant,
                    checked=checked,
                    skipped=skipped,
                    holds=bool(holds))

    def to_dict(self) -> dict:
        return dict(piece=str(self.piece),
                    split=self.split,
                    x_end=self.x_end.value,
                    ell=self.ell,
                    delta=self.delta,
                    levels=[int(k) for k in self.ks],
                    nested=self.is_nested(),
                    disjoint_stopping=self.stopping_sets_disjoint(),
                    n_entries=len(self.stopping),
                    n_flagged=len(self.stopping.flagged()),
                    snapping=self.snapping,
                    telescoping=self.telescoping(),
                    absorption=self.absorption(),
                    operator_maximal_principle=self.
                    operator_maximal_principle())


def cell_centers(params: KernelParams) -> np.ndarray:
    return (np.arange(params.n_cells) + 0.5) * params.resolution


def _kernel(params, piece_id, mu, x_end, centers) -> np.ndarray:
    if mu.is_empty:
        return np.zeros((0, len(centers)))
    x_codes = np.full(len(centers), x_end.code)
    return piece_matrix(params, piece_id, mu.t, mu.ends, mu.s, x_codes,
                        centers)


def _snap(params: KernelParams, sigma: DiscreteMeasure, x_end: EndTag):
    on_end = sigma.restrict(x_end)
    cells = on_end.cell_index(params)
    mass = np.bincount(cells, weights=on_end.weights,
                       minlength=params.n_cells).astype(float)
    shift = np.abs(on_end.s - (cells + 0.5) * params.resolution)
    snapping = dict(atoms=int(len(on_end)),
                    max_displacement=float(shift.max(initial=0.)))
    return mass, snapping


def ladder(params: KernelParams,
           sigma: DiscreteMeasure,
           mu: UpperHalfMeasure,
           phi: np.ndarray,
           piece_id=(1, 1),
           split: Optional[EndSplit] = None,
           delta: Optional[float] = None,
           ell: Optional[int] = None,
           x_end: Optional[EndTag] = None) -> LevelSetLadder:
    r"""Build the level-set ladder of :math:`P^*_{\mu,i,j}(\phi_e)`.

    :math:`\sigma` is moved to the centers of the finest cells of the end
    of evaluation, where the potential is computed. Atoms of :math:`\sigma` off that end
    are not seen by the ladder.

    Args:
        params (KernelParams): Model parameters.
        sigma (DiscreteMeasure): The measure on the manifold.
        mu (UpperHalfMeasure): The measure on the upper half space.
        phi (np.ndarray): Nonnegative values of :math:`\phi` at the
            :math:`\mu`-atoms.
        piece_id: The kernel piece. (default: :obj:`(1, 1)`)
        split (int, optional): Piece of the manifold carrying
            :math:`\phi_e` (1 big, 2 small, 3 junction). If :obj:`None`, the
            first one compatible with the piece. (default: :obj:`None`)
        delta (float, optional): Stopping threshold. If :obj:`None`, then
            :obj:`twp.config.delta` is used. (default: :obj:`None`)
        ell (int, optional): Level shift. If :obj:`None`, it is computed
            from the piece constant. (default: :obj:`None`)
        x_end (EndTag, optional): End of evaluation. (default: :obj:`None`)

    Raises:
        ValueError: If the split and the piece are incompatible or the
            arguments are out of range.
    """
    sigma.check_support(params)
    mu.check_support(params)
    pid = KernelPieceId.parse(piece_id)
    spec = PIECES[pid]
    split = default_split(pid) if split is None else int(split)
    phi_e = split_phi(mu, phi, split)
    if SPLIT_ENDS[split].code not in spec.mu_ends:
        raise ValueError(f"Piece {pid} does not accept atoms on the "
                         f"{SPLIT_ENDS[split].value} split.")
    delta = twp.config.delta if delta is None else float(delta)
    if not 0 < delta <= 1:
        raise ValueError(f"delta must be in (0, 1], got {delta}.")
    ell = ell_shift(spec.constant(params)) if ell is None else int(ell)
    x_end = default_x_end(pid, SPLIT_ENDS[split]) if x_end is None \
        else EndTag.parse(x_end)
    if not x_end.is_end or x_end.code not in spec.x_ends:
        raise ValueError(f"Piece {pid} cannot be evaluated on the "
                         f"{x_end.value} end.")

    support = phi_e > 0
    mu_e = mu.subset(support)
    centers = cell_centers(params)
    values = phi_e[support] * mu_e.weights @ _kernel(params, pid, mu_e,
                                                     x_end, centers)
    values = np.asarray(values, dtype=float).reshape(params.n_cells)
    sigma_cells, snapping = _snap(params, sigma, x_end)

    out = LevelSetLadder(params, pid, split, x_end, ell, delta, values,
                         sigma_cells, [], snapping=snapping,
                         phi=phi_e[support], mu=mu_e)
    positive = values[values > 0]
    if not len(positive):
        logger.info(f"Zero potential for piece {pid} on split {split}: "
                    f"empty ladder.")
        return out
    k_top = math.floor(math.log2(positive.max()))
    k_low = math.floor(math.log2(positive.min())) - 1
    out.ks = list(range(k_low - ell, k_top + 1))
    for k in out.ks:
        family = out.family(k)
        upper, lower = out.omega_mask(k + ell), out.omega_mask(k + ell + 1)
        shell = upper & ~lower
        for cube in family:
            a, b = cell_span(cube, params)
            cells = a + np.flatnonzero(shell[a:b])
            sigma_I = float(sigma_cells[a:b].sum())
            sigma_F = float(sigma_cells[cells].sum())
            flagged = sigma_I > 0 and sigma_F >= delta * sigma_I
            out.stopping.append(
                StoppingEntry(k, cube, sigma_F, sigma_I, flagged, cells))
    logger.info(f"Ladder of piece {pid} on split {split}: "
                f"{len(out.ks)} levels, {len(out.stopping)} entries, "
                f"{len(out.stopping.flagged())} flagged.")
    return out
