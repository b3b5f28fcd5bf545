import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.stats

from ConfoundSens.core.linalg import DEFAULT_TOLERANCES, Tolerances, sym_power
from ConfoundSens.core.logger import SensWarning
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import FactorModel
from .common import assemble, check_kind, prepare, split_iterations
from .dataset import Dataset
from .draws import PosteriorDraws
from .regime import PriorRegime, RegimeKind
from .regression import NaiveRegression, invgamma_sample

log = logging.getLogger('ConfoundSens.MCMC')

SCALE_MIN = 1e-12
SCALE_MAX = 1e12
MAX_RETRIES = 10
MAX_SLICE_STEPS = 200


def elliptical_slice(current: np.ndarray, mean: np.ndarray, cov_sqrt: np.ndarray,
                     loglik: Callable[[np.ndarray], float], rng: RngStream) -> Tuple[np.ndarray, bool]:
    """One elliptical slice update for a target ``N(mean, cov) * exp(loglik)``.

    :return: new state and whether a proposal was accepted
    """
    gen = rng.generator
    nu = cov_sqrt @ gen.standard_normal(mean.size)
    f = current - mean
    log_y = loglik(current) + math.log(gen.uniform())

    theta = gen.uniform(0, 2 * math.pi)
    lo, hi = theta - 2 * math.pi, theta
    for _ in range(MAX_SLICE_STEPS):
        prop = mean + f * math.cos(theta) + nu * math.sin(theta)
        if loglik(prop) > log_y:
            return prop, True
        if theta < 0:
            lo = theta
        else:
            hi = theta
        theta = gen.uniform(lo, hi)
    return current, False


class HorseshoeSampler:
    """Gibbs sampler with a regularized horseshoe prior on the causal coefficients.

    The state is the naive coefficients, gamma, sigma2_y_t and the auxiliary scale variables.
    The causal coefficients follow as ``beta = beta_check - (BB' + s I)^-1 B gamma``. The prior on
    gamma given sigma2_y_t is the one of the transparent sampler: r2 uniform on ``[0, r2_upper]`` and
    a uniform direction. The slab enters as an additional independent ``N(0, slab^2)`` factor.

    Gamma is updated with the naive coefficients integrated out, then the naive coefficients are drawn
    given gamma.
    """

    def __init__(self, ds: Dataset, fm: FactorModel, regime: PriorRegime, rng: RngStream,
                 tols: Tolerances = DEFAULT_TOLERANCES):
        check_kind(regime, RegimeKind.HORSESHOE, RegimeKind.HORSESHOE_NC)
        regime.check_indices(ds.k)

        self.regime = regime
        self.rng = rng
        self.cp = prepare(ds, fm, tols)
        self.reg = NaiveRegression(ds)
        self.n = ds.n
        self.m = fm.m

        self.A = self.cp.adjustment_matrix()
        if regime.kind is RegimeKind.HORSESHOE:
            self.shrunk = np.arange(fm.k)
        else:
            self.shrunk = np.array(regime.nc_indices, dtype=int)
        self.A_s = self.A[self.shrunk]
        self.slab_prec = 1 / regime.horseshoe_slab ** 2
        self.r2_upper = regime.r2_upper

        if regime.horseshoe_scale is not None:
            self.tau0 = float(regime.horseshoe_scale)
        else:
            f = regime.nonnull_fraction
            self.tau0 = f / (1 - f) * math.sqrt(self.reg.sigma2 / self.n)

        self.divergent = 0
        self.slice_stuck = 0

        # initial state
        p = self.shrunk.size
        self.beta_check = self.reg.beta_hat.copy()
        self.sigma2 = self.reg.sigma2
        self.lam2 = np.ones(p)
        self.nu = np.ones(p)
        self.tau2 = self.tau0 ** 2
        self.xi = 1.0
        self.gamma = np.zeros(self.m)
        if self.r2_upper > 0:
            d = rng.generator.standard_normal(self.m)
            d /= np.linalg.norm(d)
            self.gamma = math.sqrt(self.sigma2 * self.r2_upper / 4) * (self.cp.cov_inv_sqrt @ d)

    # -----------------------------------------------------------------------------------------------------------------
    def _invgamma(self, shape: float, scale, previous):
        for _ in range(MAX_RETRIES):
            value = invgamma_sample(self.rng, shape, scale, size=np.shape(scale) or None)
            if np.all(np.isfinite(value)) and np.all(value > 0):
                return np.clip(value, SCALE_MIN, SCALE_MAX)
            self.divergent += 1
        return previous

    def _prior_precision(self) -> np.ndarray:
        return 1 / (self.tau2 * self.lam2) + self.slab_prec

    def _quad(self, gamma: np.ndarray) -> float:
        return float(gamma @ self.cp.cov @ gamma)

    # -----------------------------------------------------------------------------------------------------------------
    def step_beta_check(self):
        prec = self._prior_precision()
        post_prec = self.reg.xtx / self.sigma2
        post_prec[self.shrunk, self.shrunk] += prec

        lin = self.reg.xty / self.sigma2
        lin[self.shrunk] += prec * (self.A_s @ self.gamma)

        chol = scipy.linalg.cholesky(post_prec, lower=True)
        mean = scipy.linalg.cho_solve((chol, True), lin)
        z = self.rng.generator.standard_normal(mean.size)
        self.beta_check = mean + scipy.linalg.solve_triangular(chol.T, z, lower=False)

    def step_gamma(self):
        if self.r2_upper <= 0:
            self.gamma = np.zeros(self.m)
            return None

        # naive coefficients integrated out: beta_hat_s ~ N(A_s gamma, sigma2 (X'X)^-1_ss + D^-1)
        s = self.shrunk
        marg_cov = self.sigma2 * self.reg.xtx_inv[np.ix_(s, s)] + np.diag(1 / self._prior_precision())
        marg_chol = scipy.linalg.cho_factor(0.5 * (marg_cov + marg_cov.T), lower=True)
        prec_g = self.A_s.T @ scipy.linalg.cho_solve(marg_chol, self.A_s)
        lin_g = self.A_s.T @ scipy.linalg.cho_solve(marg_chol, self.reg.beta_hat[s])

        # keeps the reference gaussian proper, removed again in the likelihood term
        prec_0 = self.cp.cov / (self.r2_upper * self.sigma2)
        ref_prec = prec_g + prec_0
        mean = scipy.linalg.solve(ref_prec, lin_g, assume_a='pos')
        cov_sqrt = sym_power(ref_prec, -0.5, 'gamma precision')

        sigma2, upper, power = self.sigma2, self.r2_upper, (2 - self.m) / 2

        def loglik(g: np.ndarray) -> float:
            q = float(g @ self.cp.cov @ g) / sigma2
            if q > upper:
                return -math.inf
            return 0.5 * float(g @ prec_0 @ g) + power * math.log(max(q, 1e-300))

        self.gamma, ok = elliptical_slice(self.gamma, mean, cov_sqrt, loglik, self.rng)
        if not ok:
            self.slice_stuck += 1

    def step_sigma2(self):
        shape = (self.n - 1) / 2 + 1
        scale = self.reg.rss_of(self.beta_check) / 2
        lower = self._quad(self.gamma) / self.r2_upper if self.r2_upper > 0 else 0.0

        for _ in range(MAX_RETRIES):
            if lower <= 0:
                value = float(invgamma_sample(self.rng, shape, scale))
            else:
                tail = scipy.stats.invgamma.sf(lower, shape, scale=scale)
                if not tail > 0:
                    value = lower
                else:
                    value = float(scipy.stats.invgamma.isf((1 - self.rng.generator.uniform()) * tail, shape,
                                                           scale=scale))
            if np.isfinite(value) and value >= lower and value > 0:
                self.sigma2 = value
                return None
            self.divergent += 1

    def step_scales(self):
        beta = (self.beta_check - self.A @ self.gamma)[self.shrunk]
        b2 = beta ** 2

        self.lam2 = self._invgamma(1.0, 1 / self.nu + b2 / (2 * self.tau2), self.lam2)
        self.nu = self._invgamma(1.0, 1 + 1 / self.lam2, self.nu)
        self.tau2 = float(self._invgamma((b2.size + 1) / 2, 1 / self.xi + float(np.sum(b2 / (2 * self.lam2))),
                                         self.tau2))
        self.xi = float(self._invgamma(1.0, 1 / self.tau0 ** 2 + 1 / self.tau2, self.xi))

    def step(self):
        self.step_gamma()
        self.step_beta_check()
        self.step_sigma2()
        self.step_scales()

    # -----------------------------------------------------------------------------------------------------------------
    def run(self, n_iter: int, n_warmup: Optional[int]) -> PosteriorDraws:
        n_keep, n_warmup = split_iterations(n_iter, n_warmup)

        for _ in range(n_warmup):
            self.step()

        beta_check = np.empty((n_keep, self.A.shape[0]))
        gamma = np.empty((n_keep, self.m))
        sigma2 = np.empty(n_keep)
        for i in range(n_keep):
            self.step()
            beta_check[i], gamma[i], sigma2[i] = self.beta_check, self.gamma, self.sigma2

        if self.divergent or self.slice_stuck:
            w = SensWarning(log)
            if self.divergent:
                w.add(f'{self.divergent} non-finite scale updates were rejected and redrawn')
            if self.slice_stuck:
                w.add(f'{self.slice_stuck} gamma updates did not move')
            w.dump()

        beta = beta_check - gamma @ self.A.T
        meta = {
            'r2_upper': self.r2_upper, 'shrunk_indices': self.shrunk.tolist(), 'horseshoe_scale': self.tau0,
            'horseshoe_slab': self.regime.horseshoe_slab, 'nonnull_fraction': self.regime.nonnull_fraction,
            'divergent': self.divergent, 'slice_stuck': self.slice_stuck,
        }
        return assemble(self.cp, self.regime.kind.value, self.rng, n_warmup, sigma2, gamma, beta, meta)


def sample_horseshoe(ds: Dataset, fm: FactorModel, regime: PriorRegime, n_iter: int, n_warmup: Optional[int],
                     rng: RngStream, tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    return HorseshoeSampler(ds, fm, regime, rng, tols).run(n_iter, n_warmup)
