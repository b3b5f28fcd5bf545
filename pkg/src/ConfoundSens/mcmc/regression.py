import logging
from typing import Tuple

import numpy as np
import scipy.linalg

from ConfoundSens.core.errors import DegenerateDataError
from ConfoundSens.core.linalg import numeric_rank
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import ObservedOutcomeParams
from .dataset import Dataset

log = logging.getLogger('ConfoundSens.MCMC')


def invgamma_sample(rng: RngStream, shape: float, scale, size=None) -> np.ndarray:
    """Inverse gamma draws through ``scale / Gamma(shape, 1)``"""
    return np.asarray(scale) / rng.generator.gamma(shape, 1.0, size=size)


class NaiveRegression:
    """Least squares fit of the centered outcome on the centered treatments (naive coefficients).

    Draws from the posterior under flat priors on the coefficients come from :meth:`draw`.

    :ivar ~.beta_hat: least squares coefficients
    :ivar ~.rss: residual sum of squares
    :ivar ~.df_resid: residual degrees of freedom (the intercept counts as a parameter)
    :ivar ~.sigma2: unbiased residual variance
    """

    def __init__(self, ds: Dataset):
        x, y = ds.centered()
        self.n, self.k = x.shape
        self.df_resid = self.n - self.k - 1
        if self.df_resid <= 0:
            raise DegenerateDataError(f'Need more than k + 1 = {self.k + 1} observations, got {self.n}')
        if numeric_rank(x) < self.k:
            raise DegenerateDataError('Treatment design is rank deficient')

        self.xtx = x.T @ x
        self.xty = x.T @ y
        self.yty = float(y @ y)

        self._chol = scipy.linalg.cho_factor(self.xtx, lower=True)
        self.beta_hat: np.ndarray = scipy.linalg.cho_solve(self._chol, self.xty)
        self.rss: float = max(self.yty - float(self.beta_hat @ self.xty), 0.0)
        if self.rss <= 0:
            raise DegenerateDataError('Outcome is fitted exactly, the residual variance is zero')

        self.sigma2: float = self.rss / self.df_resid
        self.xtx_inv: np.ndarray = scipy.linalg.cho_solve(self._chol, np.eye(self.k))
        self._xtx_inv_chol = np.linalg.cholesky(0.5 * (self.xtx_inv + self.xtx_inv.T))

    @property
    def standard_errors(self) -> np.ndarray:
        return np.sqrt(self.sigma2 * np.diag(self.xtx_inv))

    def observed(self) -> ObservedOutcomeParams:
        return ObservedOutcomeParams(self.beta_hat, self.sigma2)

    def rss_of(self, beta_check: np.ndarray) -> float:
        return max(self.yty - 2 * float(beta_check @ self.xty) + float(beta_check @ self.xtx @ beta_check), 0.0)

    def draw(self, n: int, rng: RngStream, extra_parameters: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """Posterior draws of (beta_check, sigma2_y_t).

        With a flat prior on ``beta_check`` and ``log sigma2`` the variance is inverse gamma with shape
        ``df_resid / 2``. ``extra_parameters`` lowers the shape by half a unit each.

        :return: n x k coefficient draws and n variance draws
        """
        shape = (self.df_resid - extra_parameters) / 2
        if shape <= 0:
            raise DegenerateDataError(f'Too few observations for {extra_parameters} additional parameters')

        sigma2 = invgamma_sample(rng, shape, self.rss / 2, size=n)
        z = rng.generator.standard_normal((n, self.k))
        beta = self.beta_hat + np.sqrt(sigma2)[:, None] * (z @ self._xtx_inv_chol.T)
        return beta, sigma2
