import logging
from typing import Optional

import numpy as np

from ConfoundSens.core.errors import DegenerateDataError
from ConfoundSens.core.linalg import DEFAULT_TOLERANCES, Tolerances
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import FactorModel
from ConfoundSens.prior import sample_sphere
from .common import assemble, check_kind, gamma_from_draws, prepare, split_iterations
from .dataset import Dataset
from .draws import PosteriorDraws
from .regime import PriorRegime, RegimeKind
from .regression import NaiveRegression

log = logging.getLogger('ConfoundSens.MCMC')


def sample_transparent(ds: Dataset, fm: FactorModel, regime: PriorRegime, n_iter: int,
                       n_warmup: Optional[int], rng: RngStream,
                       tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    """Transparent parameterization with a uniform prior on r2 and on the direction.

    The identified parameters come from the conjugate posterior of the naive regression, the confounding
    part is drawn from its prior. The draws are independent, warmup iterations are not generated.
    """
    check_kind(regime, RegimeKind.R2_UNIFORM)
    cp = prepare(ds, fm, tols)
    n_keep, n_warmup = split_iterations(n_iter, n_warmup)

    reg = NaiveRegression(ds)
    beta_check, sigma2 = reg.draw(n_keep, rng)

    if regime.r2_upper > 0:
        r2 = regime.r2_upper * rng.generator.uniform(size=n_keep)
    else:
        r2 = np.zeros(n_keep)
    gamma = gamma_from_draws(sigma2, r2, sample_sphere(fm.m, n_keep, rng), cp)

    beta = beta_check - gamma @ cp.adjustment_matrix().T
    return assemble(cp, regime.kind.value, rng, n_warmup, sigma2, gamma, beta, {'r2_upper': regime.r2_upper})


def sample_flat_gamma(ds: Dataset, fm: FactorModel, n_iter: int, n_warmup: Optional[int],
                      rng: RngStream, tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    """Flat priors on beta, gamma and the residual scale sigma_y|t,u (scientific parameterization).

    The posterior factorizes: the naive coefficients and sigma2_y_t follow a Normal-Inverse-Gamma law whose
    shape loses (m + 1) / 2 against the transparent case, and given sigma2_y_t gamma is spread over the
    feasible ellipsoid with ``r2 ~ Beta(m/2, 1/2)`` and a uniform direction. Most of the mass sits at large r2.
    The variance shape ``(n - k - m - 2) / 2`` must be positive, so the regime needs ``n > k + m + 2``.
    """
    cp = prepare(ds, fm, tols)
    if ds.n <= ds.k + fm.m + 2:
        raise DegenerateDataError(
            f'The flat gamma regime needs n > k + m + 2 observations, got n={ds.n}, k={ds.k}, m={fm.m}')
    n_keep, n_warmup = split_iterations(n_iter, n_warmup)

    reg = NaiveRegression(ds)
    beta_check, sigma2 = reg.draw(n_keep, rng, extra_parameters=fm.m + 1)

    r2 = rng.generator.beta(fm.m / 2, 0.5, size=n_keep)
    gamma = gamma_from_draws(sigma2, r2, sample_sphere(fm.m, n_keep, rng), cp)

    beta = beta_check - gamma @ cp.adjustment_matrix().T
    return assemble(cp, RegimeKind.FLAT_GAMMA.value, rng, n_warmup, sigma2, gamma, beta, {})
