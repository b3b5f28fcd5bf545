import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
import scipy.special
import scipy.stats

from ConfoundSens.core.errors import InvalidParameterError, ZeroContrastError
from ConfoundSens.core.linalg import frozen
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import ConfounderPosterior, Contrast, mu_delta
from .sphere import sample_sphere


@dataclass(frozen=True, eq=False)
class BiasSample:
    """Prior draws of the confounding bias of one contrast

    :ivar ~.draws: bias values
    :ivar ~.half_width: worst case bound ``b`` of the generating (r2, contrast)
    """
    draws: np.ndarray
    m: int
    r2: float
    half_width: float
    contrast_id: str = ''
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'draws', frozen(self.draws))


def bias_prior_draws(cp: ConfounderPosterior, contrast: Contrast, sigma2_y_t: float, r2: float, n: int,
                     rng: RngStream) -> BiasSample:
    """Bias of ``contrast`` for gamma drawn with a fixed r2 and a uniform direction"""
    if not 0 <= r2 <= 1:
        raise InvalidParameterError.out_of_range('r2', r2, 0, 1)
    if not sigma2_y_t > 0:
        raise InvalidParameterError.out_of_range('sigma2_y_t', sigma2_y_t, lower='0 (exclusive)')

    mu_d = mu_delta(cp, contrast)
    directions = sample_sphere(cp.m, n, rng)
    gammas = math.sqrt(sigma2_y_t * r2) * (directions @ cp.cov_inv_sqrt)
    half_width = math.sqrt(sigma2_y_t * r2) * float(np.linalg.norm(cp.cov_inv_sqrt @ mu_d))
    return BiasSample(gammas @ mu_d, cp.m, float(r2), half_width, contrast.name, rng.seed)


def beta_bias_cdf(x: Union[float, np.ndarray], m: int, b: float) -> Union[float, np.ndarray]:
    """CDF of ``2 b (Z - 1/2)`` with ``Z ~ Beta((m-1)/2, (m-1)/2)``. Values outside ``[-b, b]`` clamp to 0 or 1."""
    if m < 2:
        raise InvalidParameterError.out_of_range('m', m, lower=2)
    if not b > 0:
        raise InvalidParameterError.out_of_range('b', b, lower='0 (exclusive)')

    a = (m - 1) / 2
    z = np.clip((np.asarray(x, dtype=float) / b + 1) / 2, 0, 1)
    out = scipy.special.betainc(a, a, z)
    return float(out) if np.ndim(out) == 0 else out


def ks_beta_law(sample: BiasSample) -> Tuple[float, float]:
    """Kolmogorov-Smirnov test of the draws against the rescaled Beta law

    :return: statistic and p-value
    """
    if sample.half_width <= 0:
        raise ZeroContrastError.from_id(sample.contrast_id)
    res = scipy.stats.kstest(sample.draws, lambda x: beta_bias_cdf(x, sample.m, sample.half_width))
    return float(res.statistic), float(res.pvalue)


def worst_case_direction(cp: ConfounderPosterior, contrast: Contrast) -> np.ndarray:
    """Direction d which maximizes the bias of ``contrast`` for every r2"""
    v = cp.cov_inv_sqrt @ mu_delta(cp, contrast)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ZeroContrastError.from_id(contrast.name)
    return v / norm
