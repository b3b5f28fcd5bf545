import logging
from dataclasses import dataclass

import numpy as np

from ConfoundSens.core.errors import DegenerateDataError, DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import frozen, sym_eig
from ConfoundSens.model import FactorModel
from .treatments import TreatmentMatrix

log = logging.getLogger('ConfoundSens.Factor')


def _descending_eig(cov: np.ndarray):
    vals, vecs = sym_eig(cov, 'covariance')
    return vals[::-1], vecs[:, ::-1]


def fit_ppca_from_cov(cov, m: int) -> FactorModel:
    """Maximum likelihood PPCA solution for a given covariance matrix.

    :param cov: k x k covariance
    :param m: number of confounders, 1 <= m < k
    :return: factor model with loadings ``V_m sqrt(L_m - s)`` and ``s`` the mean of the trailing eigenvalues
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise DimensionMismatchError(f'Covariance must be square, got shape {cov.shape}')
    if not np.all(np.isfinite(cov)):
        raise DegenerateDataError('Covariance contains non-finite values')

    k = cov.shape[0]
    if not isinstance(m, (int, np.integer)) or not 1 <= m < k:
        raise InvalidParameterError(f'm must satisfy 1 <= m < k={k}, got {m}')

    vals, vecs = _descending_eig(cov)
    sigma2 = float(np.mean(vals[m:]))
    if not sigma2 > 0:
        raise DegenerateDataError(f'Mean of the {k - m} trailing eigenvalues is {sigma2:g}, the data are degenerate')

    scale = np.sqrt(np.clip(vals[:m] - sigma2, 0, None))
    B = vecs[:, :m] * scale

    # eigenvectors are only defined up to sign
    for j in range(m):
        pivot = np.argmax(np.abs(B[:, j]))
        if B[pivot, j] < 0:
            B[:, j] = -B[:, j]

    log.debug(f'PPCA fit: k={k}, m={m}, sigma2_t_u={sigma2:.6g}, leading eigenvalues {vals[:m]}')
    return FactorModel(B, sigma2)


def fit_ppca(tm: TreatmentMatrix, m: int, standardize: bool = False) -> FactorModel:
    """Fit the factor model to the treatments (columns are centered internally)"""
    if tm.n < tm.k + 1:
        raise DegenerateDataError(f'Fitting needs at least k + 1 = {tm.k + 1} rows, got {tm.n}')
    return fit_ppca_from_cov(tm.covariance(standardize), m)


@dataclass(frozen=True, eq=False)
class ScreeResult:
    eigenvalues: np.ndarray
    cumulative_fraction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'eigenvalues', frozen(self.eigenvalues))
        object.__setattr__(self, 'cumulative_fraction', frozen(self.cumulative_fraction))


def scree(tm: TreatmentMatrix, standardize: bool = False) -> ScreeResult:
    """Eigenvalues of the treatment covariance, descending, with the cumulative explained fraction"""
    vals, _ = _descending_eig(tm.covariance(standardize))
    vals = np.clip(vals, 0, None)

    total = vals.sum()
    if total <= 0:
        raise DegenerateDataError('All treatment columns are constant')

    cumulative = np.cumsum(vals) / total
    cumulative[-1] = 1.0
    return ScreeResult(vals, np.maximum.accumulate(cumulative))
