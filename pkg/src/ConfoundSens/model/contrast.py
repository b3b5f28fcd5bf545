from dataclasses import dataclass
from typing import Optional

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, frozen
from .factor_model import ConfounderPosterior


@dataclass(frozen=True, eq=False)
class Contrast:
    """Comparison of the interventions ``do(t1)`` and ``do(t2)``"""
    t1: np.ndarray
    t2: np.ndarray
    name: str = ''

    def __post_init__(self):
        t1 = as_vector(self.t1, 't1')
        t2 = as_vector(self.t2, 't2')
        if t1.shape != t2.shape:
            raise DimensionMismatchError.from_shapes('contrast arms', t1.shape[0], t2.shape[0])
        if not (np.all(np.isfinite(t1)) and np.all(np.isfinite(t2))):
            raise InvalidParameterError('Contrast contains non-finite values')
        object.__setattr__(self, 't1', frozen(t1))
        object.__setattr__(self, 't2', frozen(t2))

    @property
    def k(self) -> int:
        return self.t1.shape[0]

    @property
    def delta(self) -> np.ndarray:
        return self.t1 - self.t2

    @classmethod
    def coordinate(cls, k: int, treatment: int, delta: float = 1.0, name: Optional[str] = None) -> 'Contrast':
        """Treatment ``treatment`` set to ``delta`` against the all-zero baseline (zero based index)"""
        if not 0 <= treatment < k:
            raise InvalidParameterError.out_of_range('treatment', treatment, 0, k - 1)
        t1 = np.zeros(k)
        t1[treatment] = delta
        return cls(t1, np.zeros(k), name if name is not None else f't_{treatment + 1}')


def mu_delta(cp: ConfounderPosterior, c: Contrast) -> np.ndarray:
    """Difference of the conditional confounder means between the two arms"""
    if c.k != cp.k:
        raise DimensionMismatchError.from_shapes('contrast', cp.k, c.k)
    return cp.mean_map @ c.delta


def bias_of(gamma, mu_d) -> float:
    gamma = as_vector(gamma, 'gamma')
    mu_d = as_vector(mu_d, 'mu_delta', gamma.shape[0])
    return float(gamma @ mu_d)


def naive_effect(beta_check, c: Contrast) -> float:
    beta_check = as_vector(beta_check, 'beta_check', c.k)
    return float(beta_check @ c.delta)
