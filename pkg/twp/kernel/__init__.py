from .cases import KernelCase, case_codes, dispatch
from .pieces import (PIECES, KernelPieceId, PieceSpec, piece, piece_formula,
                     piece_matrix, t_comparability_constant)
from .poisson import kernel_matrix, poisson, poisson_terms

__all__ = [
    'KernelCase',
    'dispatch',
    'case_codes',
    'poisson',
    'poisson_terms',
    'kernel_matrix',
    'KernelPieceId',
    'PieceSpec',
    'PIECES',
    'piece',
    'piece_formula',
    'piece_matrix',
    't_comparability_constant',
]
