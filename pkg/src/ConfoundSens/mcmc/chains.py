import logging
from typing import Optional

from ConfoundSens.core.linalg import DEFAULT_TOLERANCES, Tolerances
from ConfoundSens.core.rng import RngStream
from ConfoundSens.core.workers import run_parallel
from ConfoundSens.model import FactorModel
from .conjugate import sample_flat_gamma, sample_transparent
from .dataset import Dataset
from .draws import PosteriorDraws
from .horseshoe import sample_horseshoe
from .loglik import pointwise_loglik
from .negative_control import sample_negative_control
from .regime import PriorRegime, RegimeKind

log = logging.getLogger('ConfoundSens.MCMC')


def sample(ds: Dataset, fm: FactorModel, regime: PriorRegime, n_iter: int, n_warmup: Optional[int],
           rng: RngStream, tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    """Run the sampler of the regime for a single chain"""
    kind = regime.kind
    if kind is RegimeKind.R2_UNIFORM:
        return sample_transparent(ds, fm, regime, n_iter, n_warmup, rng, tols)
    if kind is RegimeKind.FLAT_GAMMA:
        return sample_flat_gamma(ds, fm, n_iter, n_warmup, rng, tols)
    if kind is RegimeKind.NEGATIVE_CONTROL:
        return sample_negative_control(ds, fm, regime, n_iter, n_warmup, rng, tols)
    return sample_horseshoe(ds, fm, regime, n_iter, n_warmup, rng, tols)


def run_chains(ds: Dataset, fm: FactorModel, regime: PriorRegime, n_iter: int, n_warmup: Optional[int],
               chains: int, seed: int, workers: int = 1, with_loglik: bool = False,
               algorithm_id: Optional[str] = None, tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    """Independent chains with streams split from ``seed``. The result does not depend on ``workers``."""
    root = RngStream(seed) if algorithm_id is None else RngStream(seed, algorithm_id)

    def _chain(index: int) -> PosteriorDraws:
        draws = sample(ds, fm, regime, n_iter, n_warmup, root.spawn(index), tols)
        log.debug(f'Chain {index} of regime {regime.kind.value} finished with {draws.n_draws} draws')
        return draws

    draws = PosteriorDraws.concat(run_parallel(_chain, range(chains), workers, name=f'chain_{regime.kind.value}'))
    if with_loglik:
        draws = draws.with_loglik(pointwise_loglik(draws, ds))
    return draws
