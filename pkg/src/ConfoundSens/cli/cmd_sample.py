import logging
from pathlib import Path
from typing import List

from ConfoundSens.core.logger import SensInfo
from ConfoundSens.factor import fit_ppca
from ConfoundSens.mcmc import PriorRegime, run_chains
from .io import coordinate_indices, load_contrasts, load_dataset, write_csv, write_json, write_metadata
from .run_config import SampleRunConfig

log = logging.getLogger('ConfoundSens.Cmd')


def cmd_sample(cfg: SampleRunConfig) -> List[Path]:
    ds = load_dataset(cfg.input, cfg.outcome_col, cfg.standardize)
    fm = fit_ppca(ds.treatments, cfg.m)

    nc_indices = ()
    if cfg.nc_spec is not None:
        nc_indices = tuple(coordinate_indices(load_contrasts(cfg.nc_spec, ds.treatments.names)))

    regime = PriorRegime(
        cfg.regime, r2_upper=cfg.r2_upper, nc_indices=nc_indices, horseshoe_slab=cfg.slab_scale,
        nonnull_fraction=cfg.nonnull_fraction
    )
    regime.check_indices(ds.k)

    draws = run_chains(ds, fm, regime, cfg.iters, cfg.warmup, cfg.chains, cfg.seed, cfg.workers, with_loglik=True,
                       tols=cfg.tolerances())
    summary = draws.summary()
    chain_meta = draws.metadata.get('chains', [draws.metadata])

    name = cfg.regime.value.lower()
    files = [
        write_csv(draws.to_frame(), cfg.out_dir / f'draws_{name}.csv'),
        write_json(summary, cfg.out_dir / f'summary_{name}.json'),
        write_csv(draws.loglik_frame(), cfg.out_dir / f'loglik_{name}.csv'),
        write_metadata(cfg.out_dir, 'sample', cfg,
                       {'seed': cfg.seed, 'rng': chain_meta[0].get('rng'), 'streams': list(range(cfg.chains))},
                       {'sigma2_t_u': fm.sigma2_t_u, 'chains': chain_meta}),
    ]

    r2 = next(p for p in summary.parameters if p.name == 'r2')
    info = SensInfo(log).add('{} draws of regime {} in {} chain(s)', draws.n_draws, cfg.regime.value, cfg.chains)
    info.add('  posterior mean r2={:.3f}, 95% interval [{:.3f}, {:.3f}]', r2.mean, r2.q025, r2.q975)
    rhat = [p.rhat for p in summary.parameters if p.rhat is not None]
    if rhat:
        info.add('  largest split R-hat: {:.3f}', max(rhat))
    info.dump()
    return files
