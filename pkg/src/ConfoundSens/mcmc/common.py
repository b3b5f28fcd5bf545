from typing import Any, Dict, Optional, Tuple

import numpy as np

from ConfoundSens.core.const import WARMUP_FRACTION
from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import DEFAULT_TOLERANCES, Tolerances
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import ConfounderPosterior, FactorModel, confounder_posterior
from .dataset import Dataset
from .draws import PosteriorDraws
from .regime import PriorRegime, RegimeKind


def split_iterations(n_iter: int, n_warmup: Optional[int]) -> Tuple[int, int]:
    """:return: number of retained draws and number of warmup iterations"""
    if n_iter < 1:
        raise InvalidParameterError.out_of_range('n_iter', n_iter, lower=1)
    if n_warmup is None:
        n_warmup = int(n_iter * WARMUP_FRACTION)
    if not 0 <= n_warmup < n_iter:
        raise InvalidParameterError.out_of_range('n_warmup', n_warmup, 0, n_iter - 1)
    return n_iter - n_warmup, n_warmup


def prepare(ds: Dataset, fm: FactorModel, tols: Tolerances = DEFAULT_TOLERANCES) -> ConfounderPosterior:
    if fm.k != ds.k:
        raise DimensionMismatchError.from_shapes('factor model', ds.k, fm.k)
    return confounder_posterior(fm, tols.pd_rel_tol)


def check_kind(regime: PriorRegime, *kinds: RegimeKind):
    if regime.kind not in kinds:
        raise InvalidParameterError(
            f'Regime {regime.kind.value} is not supported here, expected {", ".join(k.value for k in kinds)}')


def gamma_from_draws(sigma2: np.ndarray, r2: np.ndarray, directions: np.ndarray, cp: ConfounderPosterior) \
        -> np.ndarray:
    """Row wise ``sigma_y|t sqrt(r2) Sigma^-1/2 d``"""
    return np.sqrt(sigma2 * r2)[:, None] * (directions @ cp.cov_inv_sqrt)


def assemble(cp: ConfounderPosterior, regime: str, rng: RngStream, n_warmup: int, sigma2: np.ndarray,
             gamma: np.ndarray, beta: np.ndarray, metadata: Dict[str, Any]) -> PosteriorDraws:
    adjust = gamma @ cp.adjustment_matrix().T
    n = beta.shape[0]
    return PosteriorDraws(
        beta=beta,
        gamma=gamma,
        r2=np.einsum('ij,jk,ik->i', gamma, cp.cov, gamma) / sigma2,
        sigma2_y_t=sigma2,
        beta_check=beta + adjust,
        chain=np.full(n, 0 if rng.stream_index is None else rng.stream_index, dtype=int),
        iteration=np.arange(n_warmup, n_warmup + n, dtype=int),
        regime=regime,
        metadata={'seed': rng.seed, 'rng': rng.algorithm_id, 'warmup': n_warmup, **metadata},
    )
