import logging
from pathlib import Path
from typing import List

import pandas as pd

from ConfoundSens.bounds import BoundsEvaluator, BoundsReport, ContrastSet
from ConfoundSens.core.errors import InfeasibleSensitivityError
from ConfoundSens.core.logger import SensInfo
from ConfoundSens.core.workers import run_parallel
from ConfoundSens.factor import fit_ppca
from ConfoundSens.mcmc import NaiveRegression
from ConfoundSens.model import Contrast, confounder_posterior
from .io import load_contrasts, load_dataset, write_csv, write_json, write_metadata
from .run_config import BoundsRunConfig

log = logging.getLogger('ConfoundSens.Cmd')


def cmd_bounds(cfg: BoundsRunConfig) -> List[Path]:
    """Worst case and negative control intervals for every (contrast, r2) pair.

    Grid points below the smallest r2 compatible with the negative controls are reported as infeasible,
    the command only fails when no grid point is feasible.
    """
    ds = load_dataset(cfg.input, cfg.outcome_col, cfg.standardize)
    names = ds.treatments.names

    fm = fit_ppca(ds.treatments, cfg.m)
    tols = cfg.tolerances()
    cp = confounder_posterior(fm, tols.pd_rel_tol)
    observed = NaiveRegression(ds).observed()

    if cfg.contrasts is not None:
        targets = load_contrasts(cfg.contrasts, names)
    else:
        targets = [Contrast.coordinate(ds.k, i, 1.0, name) for i, name in enumerate(names)]
    controls = load_contrasts(cfg.nc_spec, names) if cfg.nc_spec is not None else []

    evaluator = BoundsEvaluator(cp, observed, ContrastSet.build(targets, controls), tols.nc_tol, tols.pinv_rcond)
    per_contrast = run_parallel(lambda c: evaluator.evaluate(c, cfg.r2_grid), targets, cfg.workers, 'bounds')

    records = [r for recs in per_contrast for r in recs]
    report = BoundsReport(
        records=records,
        robustness=[evaluator.robustness(c, recs) for c, recs in zip(targets, per_contrast)],
        diagnostics=evaluator.diagnostics(),
    )

    files = [
        write_json(report, cfg.out_dir / 'bounds.json'),
        write_csv(pd.DataFrame([r.dict() for r in records]), cfg.out_dir / 'bounds.csv'),
        write_metadata(cfg.out_dir, 'bounds', cfg, {}, {'sigma2_t_u': fm.sigma2_t_u, 'r2_min': evaluator.r2_min}),
    ]

    if controls and not any(r.feasible for r in records if r.negative_control):
        raise InfeasibleSensitivityError.below_r2_min(max(cfg.r2_grid), evaluator.r2_min)

    info = SensInfo(log).add('Robustness of {} contrast(s), r2_min={:.4g}:', len(targets), evaluator.r2_min)
    for s in report.robustness:
        info.add('  {}: robust up to r2={} (worst case), {} (negative controls)',
                 s.contrast_id, s.robust_r2_worst_case, s.robust_r2_negative_control)
    info.dump()
    return files
