import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ConfoundSens.core.errors import InfeasibleSensitivityError, InvalidParameterError, ZeroContrastError
from ConfoundSens.model import ConfounderPosterior, Contrast
from .geometry import NCGeometry, as_nc_effects, r2_min, scaled_mu_delta

# r2 below r2_min by less than this is treated as r2_min
R2_SLACK = 1e-12


def _check_r2(r2: float) -> float:
    r2 = float(r2)
    if not 0 <= r2 <= 1:
        raise InvalidParameterError.out_of_range('r2', r2, 0, 1)
    return r2


def _check_sigma2(sigma2_y_t: float) -> float:
    sigma2_y_t = float(sigma2_y_t)
    if not sigma2_y_t > 0:
        raise InvalidParameterError.out_of_range('sigma2_y_t', sigma2_y_t, lower='0 (exclusive)')
    return sigma2_y_t


@dataclass(frozen=True)
class BiasInterval:
    """Interval ``[center - half_width, center + half_width]`` of the confounding bias of a contrast.
    The effect interval follows as ``naive_effect - bias``."""
    center: float
    half_width: float
    naive_effect: float

    def __post_init__(self):
        if not self.half_width >= 0:
            raise InvalidParameterError(f'half_width must be >= 0, got {self.half_width}')

    @property
    def lo(self) -> float:
        return self.center - self.half_width

    @property
    def hi(self) -> float:
        return self.center + self.half_width

    @property
    def pate_lo(self) -> float:
        return self.naive_effect - self.hi

    @property
    def pate_hi(self) -> float:
        return self.naive_effect - self.lo

    def covers_zero(self) -> bool:
        return self.pate_lo <= 0 <= self.pate_hi


def worst_case_interval(cp: ConfounderPosterior, c: Contrast, sigma2_y_t: float, r2: float,
                        naive_effect: float) -> BiasInterval:
    """Bias bound without negative controls: ``+- sigma_y|t sqrt(r2) |Sigma^-1/2 mu_delta|``"""
    r2 = _check_r2(r2)
    sigma2_y_t = _check_sigma2(sigma2_y_t)
    v = scaled_mu_delta(cp, c)
    return BiasInterval(0.0, math.sqrt(sigma2_y_t * r2) * float(np.linalg.norm(v)), float(naive_effect))


def worst_case_gamma(cp: ConfounderPosterior, c: Contrast, sigma2_y_t: float, r2: float) -> np.ndarray:
    """Confounder coefficients which attain the upper end of the worst case bound"""
    r2 = _check_r2(r2)
    sigma2_y_t = _check_sigma2(sigma2_y_t)
    v = scaled_mu_delta(cp, c)
    norm = np.linalg.norm(v)
    if norm == 0:
        return np.zeros(cp.m)
    return math.sqrt(sigma2_y_t * r2) * (cp.cov_inv_sqrt @ (v / norm))


def nc_interval(geo: NCGeometry, cp: ConfounderPosterior, c: Contrast, tau_check_C, sigma2_y_t: float,
                r2: float, naive_effect: float, r2_min_val: Optional[float] = None) -> BiasInterval:
    """Bias interval when the negative controls are known to have no effect

    :param r2_min_val: precomputed smallest feasible r2, computed if not passed
    """
    r2 = _check_r2(r2)
    sigma2_y_t = _check_sigma2(sigma2_y_t)
    tau = as_nc_effects(geo, tau_check_C)
    if r2_min_val is None:
        r2_min_val = r2_min(geo, tau, sigma2_y_t)
    if r2 < r2_min_val - R2_SLACK:
        raise InfeasibleSensitivityError.below_r2_min(r2, r2_min_val)

    v = scaled_mu_delta(cp, c)
    center = float(tau @ geo.M_pinv @ v) if geo.c else 0.0
    free = math.sqrt(max(r2 - r2_min_val, 0.0) * sigma2_y_t)
    return BiasInterval(center, free * float(np.linalg.norm(geo.P_perp @ v)), float(naive_effect))


def width_reduction(geo: NCGeometry, cp: ConfounderPosterior, c: Contrast, r2: float, r2_min_val: float) -> float:
    """Factor by which the negative controls shrink the worst case interval of a contrast"""
    r2 = float(r2)
    if not 0 < r2 <= 1:
        raise InvalidParameterError.out_of_range('r2', r2, '0 (exclusive)', 1)
    if not 0 <= r2_min_val <= r2 + R2_SLACK:
        raise InfeasibleSensitivityError.below_r2_min(r2, r2_min_val)

    v = scaled_mu_delta(cp, c)
    norm = float(np.linalg.norm(v))
    if norm == 0:
        raise ZeroContrastError.from_id(c.name)

    factor = math.sqrt(max(1 - r2_min_val / r2, 0.0)) * float(np.linalg.norm(geo.P_perp @ v)) / norm
    return min(factor, 1.0)


def robustness_value(r2_grid: Sequence[float], intervals: Sequence[Optional[BiasInterval]]) -> Optional[float]:
    """Smallest r2 of the grid at which the effect interval contains zero.
    ``None`` entries (infeasible grid points) are skipped, ``None`` is returned if zero is never covered."""
    for r2, interval in sorted(zip(r2_grid, intervals), key=lambda x: x[0]):
        if interval is not None and interval.covers_zero():
            return float(r2)
    return None
