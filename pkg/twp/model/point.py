from dataclasses import dataclass
from typing import Union

from .ends import EndTag


@dataclass(frozen=True)
class Point:
    """A location on the two-ended profile model.

    A point is an end tag together with the profile coordinate :math:`s`,
    the distance from the junction. Points with :math:`s = 0` on either end
    are identified with the junction, which carries no coordinate.

    Args:
        end (EndTag): The piece of the manifold the point lives on.
        s (float): Profile coordinate. (default: :obj:`0.`)
    """
    end: EndTag
    s: float = 0.

    def __post_init__(self):
        end = EndTag.parse(self.end)
        s = float(self.s)
        if s < 0:
            raise ValueError(f"Profile coordinate must be nonnegative, got "
                             f"{s}.")
        if end is EndTag.JUNCTION or s == 0:
            end, s = EndTag.JUNCTION, 0.
        object.__setattr__(self, 'end', end)
        object.__setattr__(self, 's', s)

    def __repr__(self):
        if self.end is EndTag.JUNCTION:
            return 'Point(junction)'
        return f'Point({self.end.value}:{self.s:g})'

    @classmethod
    def junction(cls) -> 'Point':
        return cls(EndTag.JUNCTION)

    @classmethod
    def parse(cls, value: Union[str, 'Point']) -> 'Point':
        """Parse strings like :obj:`'big:1.5'`, :obj:`'small:0.5'` or
        :obj:`'junction'`."""
        if isinstance(value, Point):
            return value
        end, _, s = str(value).partition(':')
        if EndTag.parse(end) is EndTag.JUNCTION:
            return cls.junction()
        if not s:
            raise ValueError(f"Missing profile coordinate in '{value}'.")
        return cls(EndTag.parse(end), float(s))
