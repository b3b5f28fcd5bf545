import math

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError
from .dataset import Dataset
from .draws import PosteriorDraws

LOG_2PI = math.log(2 * math.pi)


def pointwise_loglik(draws: PosteriorDraws, ds: Dataset) -> np.ndarray:
    """Gaussian log density of every (centered) observation under the naive regression implied by each draw

    :return: n_draws x n matrix
    """
    if draws.k != ds.k:
        raise DimensionMismatchError.from_shapes('draws', ds.k, draws.k)

    x, y = ds.centered()
    resid = y[None, :] - draws.beta_check @ x.T
    s2 = draws.sigma2_y_t[:, None]
    return -0.5 * (LOG_2PI + np.log(s2) + resid ** 2 / s2)


def total_loglik(draws: PosteriorDraws, ds: Dataset) -> np.ndarray:
    """Full data log likelihood per draw"""
    if draws.k != ds.k:
        raise DimensionMismatchError.from_shapes('draws', ds.k, draws.k)

    x, y = ds.centered()
    rss = np.sum((y[None, :] - draws.beta_check @ x.T) ** 2, axis=1)
    return -0.5 * (ds.n * (LOG_2PI + np.log(draws.sigma2_y_t)) + rss / draws.sigma2_y_t)
