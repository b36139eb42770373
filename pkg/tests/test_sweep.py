import os

import numpy as np
import pytest
from hydra import compose, initialize

from twp.model import KernelParams
from twp.testing import summarize_sweep, sweep


def init_experiment():
    path_to_yamls = os.path.join('.', 'config')
    with initialize(config_path=path_to_yamls,
                    job_name='test_sweep',
                    version_base=None):
        cfg = compose(config_name='test_sweep', overrides=[])
    return cfg


@pytest.mark.slow
@pytest.mark.integration
def test_sweep():
    cfg = init_experiment()
    params = KernelParams(**cfg.params)

    frame = sweep(params,
                  instances=cfg.sweep.instances,
                  seed=cfg.sweep.seed,
                  atoms=cfg.sweep.atoms,
                  workers=cfg.sweep.workers,
                  convention=cfg.hat_convention,
                  progress=False)
    assert len(frame) == cfg.sweep.instances
    assert frame.necessity.all()
    assert np.all(frame.F <= frame.N * (1 + cfg.eps_num))
    assert np.all(frame.B <= frame.N * (1 + cfg.eps_num))

    summary = summarize_sweep(frame, cfg.ratio_ceiling)
    assert summary['necessity_violations'] == 0
    assert summary['above_ceiling'] == 0
    assert summary['max_ratio'] <= cfg.ratio_ceiling
    assert np.isfinite(summary['max_ratio'])
    # three disjoint seed batches agree on the largest ratio
    assert len(summary['batch_max_ratio']) == 3
    assert summary['batch_spread'] <= 0.2
