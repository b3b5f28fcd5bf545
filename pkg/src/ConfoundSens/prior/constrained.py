import math

import numpy as np

from ConfoundSens.bounds import NCGeometry
from ConfoundSens.bounds import as_nc_effects
from ConfoundSens.bounds.intervals import R2_SLACK
from ConfoundSens.core.errors import InfeasibleSensitivityError, InvalidParameterError
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import ConfounderPosterior
from .sphere import sample_sphere

# free component below this (relative to sigma_y|t) counts as zero
FREE_NORM_TOL = 1e-8


def minimal_gamma(geo: NCGeometry, cp: ConfounderPosterior, tau_check_C) -> np.ndarray:
    """Smallest confounding (in the Sigma norm) which explains the naive negative control effects"""
    tau = as_nc_effects(geo, tau_check_C)
    if geo.c == 0:
        return np.zeros(cp.m)
    return cp.cov_inv_sqrt @ (tau @ geo.M_pinv)


def sample_gamma_nc(geo: NCGeometry, cp: ConfounderPosterior, tau_check_C, sigma2_y_t: float, r2: float, n: int,
                    rng: RngStream) -> np.ndarray:
    """Draw gamma which reproduces the naive negative control effects with ``gamma' Sigma gamma = r2 sigma2_y_t``.

    ``gamma = Sigma^-1/2 (M^+' tau' + s w)`` with ``w`` uniform on the unit sphere of the complement of col(M)
    and ``s`` fixed by the r2 constraint.
    """
    if not sigma2_y_t > 0:
        raise InvalidParameterError.out_of_range('sigma2_y_t', sigma2_y_t, lower='0 (exclusive)')
    if not 0 <= r2 <= 1:
        raise InvalidParameterError.out_of_range('r2', r2, 0, 1)

    tau = as_nc_effects(geo, tau_check_C)
    base = tau @ geo.M_pinv if geo.c else np.zeros(cp.m)
    base_sq = float(base @ base)
    r2_min = base_sq / sigma2_y_t
    if r2 < r2_min - R2_SLACK:
        raise InfeasibleSensitivityError.below_r2_min(r2, r2_min)

    free = math.sqrt(max(r2 * sigma2_y_t - base_sq, 0.0))
    dim = geo.complement.shape[1]
    if dim == 0:
        if free > FREE_NORM_TOL * math.sqrt(sigma2_y_t):
            raise InfeasibleSensitivityError(
                f'The negative controls identify gamma, only r2={r2_min:g} is feasible (got {r2:g})', r2_min=r2_min)
        z = np.tile(base, (n, 1))
    else:
        w = sample_sphere(dim, n, rng) @ geo.complement.T
        z = base + free * w

    return z @ cp.cov_inv_sqrt
