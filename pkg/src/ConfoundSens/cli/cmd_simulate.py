import logging
from pathlib import Path
from typing import List

import numpy as np

from ConfoundSens.sim import DGPConfig, generate
from .io import write_csv, write_json, write_metadata
from .run_config import SimulateRunConfig

log = logging.getLogger('ConfoundSens.Cmd')


def cmd_simulate(cfg: SimulateRunConfig) -> List[Path]:
    """Simulated dataset (``t_1 .. t_k, y``) with a ground truth sidecar"""
    dgp = DGPConfig(
        n=cfg.n, k=cfg.k, m=cfg.m, r2_target=cfg.r2, loading_pattern=cfg.dgp, variant=cfg.variant, seed=cfg.seed,
        beta_true=None if cfg.beta_true is None else np.array(cfg.beta_true)
    )
    ds, truth = generate(dgp)

    frame = ds.treatments.to_frame()
    frame['y'] = ds.outcome
    files = [
        write_csv(frame, cfg.out_dir / 'simulated.csv'),
        write_json({'dgp': dgp.to_dict(), 'truth': truth.to_dict()}, cfg.out_dir / 'simulated_truth.json'),
        write_metadata(cfg.out_dir, 'simulate', cfg, {'seed': cfg.seed}),
    ]
    log.info(f'Simulated {cfg.n} units with {cfg.k} treatments ({cfg.variant.value}, r2={truth.r2:.3f})')
    return files
