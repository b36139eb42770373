from .matrix import OperatorMatrix, apply_adjoint, apply_forward
from .norm import NormResult, dense_norm, operator_norm

__all__ = [
    'OperatorMatrix',
    'apply_forward',
    'apply_adjoint',
    'NormResult',
    'operator_norm',
    'dense_norm',
]
