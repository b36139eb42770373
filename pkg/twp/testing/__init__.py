from .constants import TestingConstant, backward_constant, forward_constant
from .sweep import (SweepRow, batch_maxima, summarize_sweep, sweep,
                    write_sweep_csv)
from .verify import TestingReport, verify

__all__ = [
    'TestingConstant',
    'TestingReport',
    'forward_constant',
    'backward_constant',
    'verify',
    'SweepRow',
    'sweep',
    'batch_maxima',
    'summarize_sweep',
    'write_sweep_csv',
]
