r"""Principal cubes of a nonnegative function on the upper half space.

With :math:`\alpha(J) = \tilde{\mu}(\hat{J})^{-1} \int_{\hat{J}}
(\phi / t) \, d\tilde{\mu}`, the descendants of a selected cube :math:`G`
are scanned top-down and :math:`J` is selected as soon as
:math:`\alpha(J) \geq A \, \alpha(G)`. The selected cubes form a sparse
family, hence

.. math::

    \sum_{G} \alpha(G)^2 \tilde{\mu}(\hat{G}) \leq C_P \|\phi\|^2_{L^2(\mu)}.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

import twp
from twp import logger
from twp.dyadic.cubes import DyadicCube, box, enumerate_cubes, membership
from twp.errors import InvariantViolation
from twp.model.measures import UpperHalfMeasure
from twp.model.params import KernelParams

__all__ = ['PrincipalForest', 'principal_cubes']


@dataclass
class PrincipalForest:
    r"""Principal cubes and the averages used to select them.

    Args:
        params (KernelParams): Model parameters.
        root (DyadicCube): The starting cube.
        selected (list): Principal cubes in selection order, root first.
        parent (dict): The principal cube from which each principal cube
            was selected (:obj:`None` for the root).
        alpha (dict): :math:`\alpha(J)` for every scanned cube of positive
            mass.
        mass (dict): :math:`\tilde{\mu}(\hat{J})` for the same cubes.
        phi_norm2 (float): :math:`\|\phi\|^2_{L^2(\mu)}`.
        factor (float): Selection factor :math:`A`.
    """
    params: KernelParams
    root: DyadicCube
    selected: List[DyadicCube] = field(default_factory=list)
    parent: Dict[DyadicCube, Optional[DyadicCube]] = field(
        default_factory=dict)
    alpha: Dict[DyadicCube, float] = field(default_factory=dict)
    mass: Dict[DyadicCube, float] = field(default_factory=dict)
    phi_norm2: float = 0.
    factor: float = 10.

    def __len__(self):
        return len(self.selected)

    def __contains__(self, cube: DyadicCube) -> bool:
        return cube in self.parent

    def principal_ancestor(self, cube: DyadicCube) -> DyadicCube:
        """The smallest principal cube containing :obj:`cube` (the cube
        itself when it is principal)."""
        for candidate in [cube] + cube.ancestors():
            if candidate in self.parent:
                return candidate
        return self.root

    def carleson_sum(self) -> float:
        return float(
            sum(self.alpha[g]**2 * self.mass[g] for g in self.selected))

    def carleson_bound(self, constant: Optional[float] = None) -> float:
        constant = twp.config.carleson_constant if constant is None \
            else constant
        return constant * self.phi_norm2

    def alpha_bound_holds(self) -> bool:
        r"""Whether :math:`\alpha(J) \leq \tilde{\mu}(\hat{J})^{-1/2}
        \|\phi\|_{L^2(\mu)}` on every scanned cube."""
        slack = 1 + twp.config.eps_num
        norm = np.sqrt(self.phi_norm2)
        return all(a <= norm / np.sqrt(self.mass[c]) * slack
                   for c, a in self.alpha.items())

    def to_dict(self, constant: Optional[float] = None) -> dict:
        total, bound = self.carleson_sum(), self.carleson_bound(constant)
        return dict(root=self.root.id,
                    factor=self.factor,
                    selected=[g.id for g in self.selected],
                    parent={
                        g.id: None if p is None else p.id
                        for g, p in self.parent.items()
                    },
                    alpha={g.id: self.alpha[g]
                           for g in self.selected},
                    carleson_sum=total,
                    carleson_bound=bound,
                    carleson_holds=bool(total <= bound),
                    alpha_bound_holds=self.alpha_bound_holds())


def principal_cubes(params: KernelParams,
                    mu: UpperHalfMeasure,
                    phi: np.ndarray,
                    root: Optional[DyadicCube] = None,
                    factor: Optional[float] = None,
                    carleson_constant: Optional[float] = None,
                    strict: bool = True) -> PrincipalForest:
    r"""Select the principal cubes of :math:`\phi` breadth-first from
    :obj:`root`.

    Cubes whose Carleson box has no :math:`\tilde{\mu}`-mass are pruned with
    their descendants; a cube is selected only when its average is
    positive.

    Args:
        params (KernelParams): Model parameters.
        mu (UpperHalfMeasure): The measure :math:`\mu`.
        phi (np.ndarray): Nonnegative values of :math:`\phi` at the atoms.
        root (DyadicCube, optional): Starting cube. If :obj:`None`, the root
            cube of the manifold. (default: :obj:`None`)
        factor (float, optional): Selection factor. If :obj:`None`, then
            :obj:`twp.config.principal_factor` is used.
            (default: :obj:`None`)
        carleson_constant (float, optional): Constant of the Carleson bound.
            If :obj:`None`, then :obj:`twp.config.carleson_constant` is used.
            (default: :obj:`None`)
        strict (bool): If :obj:`True`, raise when the Carleson bound fails.
            (default: :obj:`True`)

    Raises:
        ValueError: If :obj:`phi` is negative or the root box has no mass.
        InvariantViolation: If :obj:`strict` and the Carleson bound fails.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (len(mu), ):
        raise ValueError(f"phi must have one value per mu-atom ({len(mu)}).")
    if np.any(~np.isfinite(phi)) or np.any(phi < 0):
        raise ValueError("phi must be finite and nonnegative.")
    factor = twp.config.principal_factor if factor is None else factor
    root = DyadicCube.root(params) if root is None else root

    cubes = [c for c in enumerate_cubes(params) if root.contains_cube(c)]
    inside = membership([box(c) for c in cubes], mu.ends, mu.s, mu.t)
    t2w = mu.t**2 * mu.weights
    mass = inside @ t2w
    # phi/t integrated against t^2 mu
    integral = inside @ (phi * mu.t * mu.weights)
    index = {c: i for i, c in enumerate(cubes)}
    if mass[index[root]] <= 0:
        raise ValueError(f"The Carleson box of {root.id} has no mass.")

    forest = PrincipalForest(params,
                             root,
                             phi_norm2=float(np.sum(phi**2 * mu.weights)),
                             factor=factor)

    def scan(cube):
        i = index[cube]
        forest.mass[cube] = float(mass[i])
        forest.alpha[cube] = float(integral[i] / mass[i])

    scan(root)
    forest.selected.append(root)
    forest.parent[root] = None
    queue = deque([(root, root)])
    while queue:
        cube, current = queue.popleft()
        for child in cube.children(params.L):
            if mass[index[child]] <= 0:
                continue
            scan(child)
            alpha = forest.alpha[child]
            if alpha > 0 and alpha >= factor * forest.alpha[current]:
                forest.selected.append(child)
                forest.parent[child] = current
                queue.append((child, child))
            else:
                queue.append((child, current))

    total, bound = forest.carleson_sum(), forest.carleson_bound(
        carleson_constant)
    logger.info(f"{len(forest)} principal cubes, Carleson sum {total:.4g} "
                f"(bound {bound:.4g}).")
    if total > bound * (1 + twp.config.eps_num):
        msg = f"Carleson bound of the principal cubes failed: " \
              f"{total!r} > {bound!r}."
        if strict:
            raise InvariantViolation(msg)
        logger.error(msg)
    return forest
