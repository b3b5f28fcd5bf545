import logging
from typing import Optional

import numpy as np

from ConfoundSens.bounds import ContrastSet, coordinate_contrast, nc_compatible, nc_geometry, project_row_space
from ConfoundSens.core.errors import InfeasibleSensitivityError
from ConfoundSens.core.linalg import DEFAULT_TOLERANCES, Tolerances
from ConfoundSens.core.logger import SensWarning
from ConfoundSens.core.rng import RngStream
from ConfoundSens.model import FactorModel
from ConfoundSens.prior import sample_gamma_nc
from .common import assemble, check_kind, prepare, split_iterations
from .dataset import Dataset
from .draws import PosteriorDraws
from .regime import PriorRegime, RegimeKind
from .regression import NaiveRegression

log = logging.getLogger('ConfoundSens.MCMC')

# consecutive infeasible draws before giving up
MAX_REDRAWS = 1000


def sample_negative_control(ds: Dataset, fm: FactorModel, regime: PriorRegime, n_iter: int,
                            n_warmup: Optional[int], rng: RngStream,
                            tols: Tolerances = DEFAULT_TOLERANCES) -> PosteriorDraws:
    """Transparent sampler where the listed treatments have no effect.

    Per draw the naive negative control effects fix the part of gamma inside col(M), r2 is uniform on
    ``[R2_min, r2_upper]`` and the rest of gamma is uniform on the complement sphere.
    Draws whose ``R2_min`` exceeds ``r2_upper`` are redrawn.
    """
    check_kind(regime, RegimeKind.NEGATIVE_CONTROL)
    regime.check_indices(ds.k)
    cp = prepare(ds, fm, tols)
    n_keep, n_warmup = split_iterations(n_iter, n_warmup)

    idx = np.array(regime.nc_indices, dtype=int)
    geo = nc_geometry(cp, ContrastSet.build([], [coordinate_contrast(fm.k, i) for i in idx]), tols.pinv_rcond)
    reg = NaiveRegression(ds)

    # compatibility at the posterior mean of the naive effects
    compatible, residual = nc_compatible(geo, reg.beta_hat[idx], tols.nc_tol)
    if not compatible:
        w = SensWarning(log)
        w.add('Naive effects of the negative controls are not in the row space of the constraint matrix')
        w.add(f'  residual norm: {residual:.6g} (tolerance {tols.nc_tol:g})')
        w.add('  sampling continues with the row space projection')
        w.dump()

    beta = np.empty((n_keep, fm.k))
    gamma = np.empty((n_keep, fm.m))
    sigma2 = np.empty(n_keep)
    identified = geo.complement.shape[1] == 0
    redraws = 0

    for i in range(n_keep):
        for attempt in range(MAX_REDRAWS):
            bc, s2 = reg.draw(1, rng)
            bc, s2 = bc[0], float(s2[0])
            tau = project_row_space(geo, bc[idx])
            base = tau @ geo.M_pinv
            r2_lo = float(base @ base) / s2
            if r2_lo <= regime.r2_upper:
                break
            redraws += 1
        else:
            raise InfeasibleSensitivityError(
                f'{MAX_REDRAWS} consecutive draws have R2_min above r2_upper={regime.r2_upper:g}', r2_min=r2_lo)

        r2 = r2_lo if identified else rng.generator.uniform(r2_lo, regime.r2_upper)
        g = sample_gamma_nc(geo, cp, tau, s2, r2, 1, rng)[0]

        b = bc - cp.adjustment_matrix() @ g
        b[idx] = 0.0
        beta[i], gamma[i], sigma2[i] = b, g, s2

    if redraws:
        log.info(f'{redraws} draws were redrawn because R2_min exceeded r2_upper')

    meta = {
        'r2_upper': regime.r2_upper, 'nc_indices': list(regime.nc_indices),
        'nc_compatible': bool(compatible), 'nc_residual_norm': residual, 'nc_projected': not compatible,
        'nc_rank': geo.rank, 'nc_tol': tols.nc_tol, 'redraws': redraws,
    }
    return assemble(cp, regime.kind.value, rng, n_warmup, sigma2, gamma, beta, meta)
