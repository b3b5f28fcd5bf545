from dataclasses import dataclass

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, frozen
from .factor_model import ConfounderPosterior

UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SensitivitySpec:
    """Unidentified part of the outcome model.

    :ivar ~.r2: fraction of the residual outcome variance explained by the confounders
    :ivar ~.direction: unit vector on the (m-1)-sphere
    """
    r2: float
    direction: np.ndarray

    def __post_init__(self):
        r2 = float(self.r2)
        if not 0 <= r2 <= 1:
            raise InvalidParameterError.out_of_range('r2', r2, 0, 1)

        d = as_vector(self.direction, 'direction')
        if abs(np.linalg.norm(d) - 1) > UNIT_NORM_TOL:
            raise InvalidParameterError(f'direction must have unit norm, got {np.linalg.norm(d):.15g}')

        object.__setattr__(self, 'r2', r2)
        object.__setattr__(self, 'direction', frozen(d))

    @classmethod
    def from_vector(cls, r2: float, vec) -> 'SensitivitySpec':
        vec = as_vector(vec, 'direction')
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise InvalidParameterError('direction can not be the zero vector')
        return cls(r2, vec / norm)


def gamma_from_spec(spec: SensitivitySpec, sigma2_y_t: float, cp: ConfounderPosterior) -> np.ndarray:
    """``gamma = sigma_y|t * sqrt(r2) * Sigma^-1/2 d``, so that ``gamma' Sigma gamma = r2 * sigma2_y_t``"""
    if spec.direction.shape[0] != cp.m:
        raise DimensionMismatchError.from_shapes('direction', cp.m, spec.direction.shape[0])
    sigma2_y_t = float(sigma2_y_t)
    if not sigma2_y_t > 0:
        raise InvalidParameterError.out_of_range('sigma2_y_t', sigma2_y_t, lower='0 (exclusive)')
    return np.sqrt(sigma2_y_t * spec.r2) * (cp.cov_inv_sqrt @ spec.direction)
