from .cardinality import CardinalityReport, cardinality_check
from .ladder import (SPLIT_ENDS, LevelSetLadder, StoppingData, StoppingEntry,
                     default_split, ladder, split_phi)
from .principal import PrincipalForest, principal_cubes
from .principles import (PrincipleReport, default_x_end, ell_shift,
                         maximal_principle_check, t_linearity_check)
from .report import run_proofscope

__all__ = [
    'LevelSetLadder',
    'StoppingData',
    'StoppingEntry',
    'PrincipalForest',
    'PrincipleReport',
    'CardinalityReport',
    'SPLIT_ENDS',
    'ladder',
    'split_phi',
    'default_split',
    'default_x_end',
    'ell_shift',
    'maximal_principle_check',
    't_linearity_check',
    'principal_cubes',
    'cardinality_check',
    'run_proofscope',
]
