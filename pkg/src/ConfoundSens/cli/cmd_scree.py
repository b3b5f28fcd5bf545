import logging
from pathlib import Path
from typing import List

import numpy as np
import pandas as pd

from ConfoundSens.factor import scree
from .io import load_dataset, write_csv, write_metadata
from .run_config import ScreeRunConfig

log = logging.getLogger('ConfoundSens.Cmd')


def cmd_scree(cfg: ScreeRunConfig) -> List[Path]:
    ds = load_dataset(cfg.input, cfg.outcome_col)
    res = scree(ds.treatments, cfg.standardize)

    frame = pd.DataFrame({
        'rank': np.arange(1, res.eigenvalues.size + 1),
        'eigenvalue': res.eigenvalues,
        'cumulative_fraction': res.cumulative_fraction,
    })
    log.info(f'Leading eigenvalues: {", ".join(f"{k:.4g}" for k in res.eigenvalues[:5])}')
    return [
        write_csv(frame, cfg.out_dir / 'scree.csv'),
        write_metadata(cfg.out_dir, 'scree', cfg, {}, {'standardize': cfg.standardize}),
    ]
