import math
from dataclasses import asdict, dataclass
from typing import Mapping


@dataclass(frozen=True)
class KernelParams:
    """Dimensional parameters of the manifold with two ends and the dyadic
    resolution of the model.

    Args:
        m (int): Dimension of the big end. (default: :obj:`4`)
        n (int): Dimension of the small end, with :math:`m > n \\geq 3`.
            (default: :obj:`3`)
        S (float): Extent of the profile of each end, a power of two.
            (default: :obj:`8.`)
        L (int): Depth of the dyadic system. (default: :obj:`6`)
    """
    m: int = 4
    n: int = 3
    S: float = 8.
    L: int = 6

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n:
            raise ValueError("Dimensions m and n must be integers.")
        if not self.m > self.n >= 3:
            raise ValueError(f"Dimensions must satisfy m > n >= 3, got "
                             f"m={self.m}, n={self.n}.")
        if self.S <= 0:
            raise ValueError(f"Extent S must be positive, got {self.S}.")
        q = math.log2(self.S)
        if q < 0 or q != int(q):
            raise ValueError(f"Extent S must be 2^q with integer q >= 0, got "
                             f"{self.S}.")
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"Dyadic depth L must be an integer >= 1, got "
                             f"{self.L}.")
        object.__setattr__(self, 'm', int(self.m))
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'S', float(self.S))
        object.__setattr__(self, 'L', int(self.L))

    @property
    def resolution(self) -> float:
        """Side of the finest dyadic cells, :math:`S 2^{-L}`."""
        return self.S * 2.**-self.L

    @property
    def n_cells(self) -> int:
        """Number of finest cells on each end."""
        return 2**self.L

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, mapping: Mapping) -> 'KernelParams':
        unknown = set(mapping).difference({'m', 'n', 'S', 'L'})
        if unknown:
            raise ValueError(f"Unknown kernel parameters {sorted(unknown)}.")
        return cls(**mapping)
