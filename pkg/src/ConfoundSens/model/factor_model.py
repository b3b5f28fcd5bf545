from dataclasses import dataclass, field

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError, NotPositiveDefiniteError
from ConfoundSens.core.const import PD_REL_TOL
from ConfoundSens.core.linalg import check_pd, frozen, sym_inv, sym_power


@dataclass(frozen=True, eq=False)
class FactorModel:
    """Treatment side of the model: ``T = B U + eps`` with ``U ~ N(0, I_m)`` and ``eps ~ N(0, sigma2_t_u I_k)``

    :ivar ~.B: loading matrix (k treatments x m confounders)
    :ivar ~.sigma2_t_u: treatment noise variance, shared by all treatments
    """
    B: np.ndarray
    sigma2_t_u: float

    def __post_init__(self):
        b = np.asarray(self.B, dtype=float)
        if b.ndim != 2:
            raise DimensionMismatchError(f'B must be a k x m matrix, got shape {b.shape}')
        k, m = b.shape
        if k < 1 or m < 1:
            raise DimensionMismatchError(f'B needs at least one row and one column, got shape {b.shape}')
        if m > k:
            raise DimensionMismatchError(f'More confounders than treatments is not supported (k={k}, m={m})')
        if not np.all(np.isfinite(b)):
            raise InvalidParameterError('B contains non-finite values')

        sigma2 = float(self.sigma2_t_u)
        if not np.isfinite(sigma2) or sigma2 <= 0:
            raise InvalidParameterError.out_of_range('sigma2_t_u', sigma2, lower='0 (exclusive)')

        object.__setattr__(self, 'B', frozen(b))
        object.__setattr__(self, 'sigma2_t_u', sigma2)

    @property
    def k(self) -> int:
        return self.B.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    def covariance(self) -> np.ndarray:
        """Implied treatment covariance ``BB' + sigma2_t_u I``"""
        return self.B @ self.B.T + self.sigma2_t_u * np.eye(self.k)

    def rotate(self, q: np.ndarray) -> 'FactorModel':
        """Member of the same equivalence class: loadings ``B Q`` for an orthogonal ``Q``"""
        q = np.asarray(q, dtype=float)
        if q.shape != (self.m, self.m):
            raise DimensionMismatchError.from_shapes('rotation', (self.m, self.m), q.shape)
        if not np.allclose(q.T @ q, np.eye(self.m), atol=1e-10):
            raise InvalidParameterError('Rotation matrix is not orthogonal')
        return FactorModel(self.B @ q, self.sigma2_t_u)


@dataclass(frozen=True, eq=False)
class ConfounderPosterior:
    """Conditional distribution of the confounders given the treatments: ``U | T=t ~ N(mean_map t, cov)``

    :ivar ~.mean_map: m x k matrix mapping t to the conditional confounder mean
    :ivar ~.cov: conditional confounder covariance, constant in t
    :ivar ~.cov_inv_sqrt: symmetric inverse square root of ``cov``
    :ivar ~.cov_sqrt: symmetric square root of ``cov``
    :ivar ~.rel_tol: relative eigenvalue cutoff of the positive definiteness check
    """
    mean_map: np.ndarray
    cov: np.ndarray
    rel_tol: float = field(default=PD_REL_TOL, repr=False)
    cov_inv_sqrt: np.ndarray = field(init=False, repr=False)
    cov_sqrt: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mean_map = np.asarray(self.mean_map, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean_map.ndim != 2:
            raise DimensionMismatchError(f'mean_map must be a m x k matrix, got shape {mean_map.shape}')
        m = mean_map.shape[0]
        if cov.shape != (m, m):
            raise DimensionMismatchError.from_shapes('cov', (m, m), cov.shape)

        cov = 0.5 * (cov + cov.T)
        vals, _ = check_pd(cov, 'Confounder covariance', self.rel_tol)
        if vals[-1] > 1 + 1e-10:
            raise NotPositiveDefiniteError(f'Confounder covariance has an eigenvalue above one ({vals[-1]:g})')

        object.__setattr__(self, 'mean_map', frozen(mean_map))
        object.__setattr__(self, 'cov', frozen(cov))
        object.__setattr__(self, 'cov_inv_sqrt', frozen(sym_power(cov, -0.5, 'Confounder covariance', self.rel_tol)))
        object.__setattr__(self, 'cov_sqrt', frozen(sym_power(cov, 0.5, 'Confounder covariance', self.rel_tol)))

    @property
    def k(self) -> int:
        return self.mean_map.shape[1]

    @property
    def m(self) -> int:
        return self.mean_map.shape[0]

    def mean(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if t.shape[-1] != self.k:
            raise DimensionMismatchError.from_shapes('treatment vector', self.k, t.shape[-1])
        return t @ self.mean_map.T

    def adjustment_matrix(self) -> np.ndarray:
        """``(BB' + sigma2 I)^-1 B`` (k x m), the map from gamma to the confounding shift of the naive coefficients"""
        return self.mean_map.T


def confounder_posterior(fm: FactorModel, rel_tol: float = PD_REL_TOL) -> ConfounderPosterior:
    """Condition the confounders on the treatments.
    Matrices whose eigenvalue ratio is not above ``rel_tol`` are rejected as not positive definite.

    Uses the m x m form ``B'(BB' + s I)^-1 = (B'B + s I)^-1 B'`` and ``I - B'(BB' + s I)^-1 B = s (B'B + s I)^-1``
    """
    if not isinstance(fm, FactorModel):
        raise InvalidParameterError(f'Expected a FactorModel, got {type(fm).__name__}')

    gram_inv = sym_inv(fm.B.T @ fm.B + fm.sigma2_t_u * np.eye(fm.m), "B'B + sigma2 I", rel_tol)
    return ConfounderPosterior(gram_inv @ fm.B.T, fm.sigma2_t_u * gram_inv, rel_tol)


def adjustment_matrix(fm: FactorModel) -> np.ndarray:
    return confounder_posterior(fm).adjustment_matrix()
