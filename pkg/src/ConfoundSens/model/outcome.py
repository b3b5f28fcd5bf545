from dataclasses import dataclass
from typing import Optional

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, frozen
from .factor_model import ConfounderPosterior, FactorModel, confounder_posterior


def _positive(name: str, value) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise InvalidParameterError.out_of_range(name, value, lower='0 (exclusive)')
    return value


@dataclass(frozen=True, eq=False)
class OutcomeModel:
    """Linear outcome model ``Y = beta't + gamma'U + eps`` with ``Var(eps) = sigma2_y_tu``"""
    beta: np.ndarray
    gamma: np.ndarray
    sigma2_y_tu: float

    def __post_init__(self):
        object.__setattr__(self, 'beta', frozen(as_vector(self.beta, 'beta')))
        object.__setattr__(self, 'gamma', frozen(as_vector(self.gamma, 'gamma')))
        object.__setattr__(self, 'sigma2_y_tu', _positive('sigma2_y_tu', self.sigma2_y_tu))


@dataclass(frozen=True, eq=False)
class ObservedOutcomeParams:
    """Identified part of the outcome model: naive coefficients and residual variance given T"""
    beta_check: np.ndarray
    sigma2_y_t: float

    def __post_init__(self):
        object.__setattr__(self, 'beta_check', frozen(as_vector(self.beta_check, 'beta_check')))
        object.__setattr__(self, 'sigma2_y_t', _positive('sigma2_y_t', self.sigma2_y_t))


def _check_dims(fm: FactorModel, beta: Optional[np.ndarray], gamma: np.ndarray):
    if beta is not None and beta.shape[0] != fm.k:
        raise DimensionMismatchError.from_shapes('beta', fm.k, beta.shape[0])
    if gamma.shape[0] != fm.m:
        raise DimensionMismatchError.from_shapes('gamma', fm.m, gamma.shape[0])


def observed_params(om: OutcomeModel, fm: FactorModel, cp: Optional[ConfounderPosterior] = None) \
        -> ObservedOutcomeParams:
    """Map the outcome model to what the observed data identify.

    :param om: outcome model
    :param fm: factor model of the treatments
    :param cp: confounder posterior of ``fm``, computed if not passed
    :return: ``beta_check = beta + (BB' + s I)^-1 B gamma`` and ``sigma2_y_t = sigma2_y_tu + gamma' Sigma gamma``
    """
    _check_dims(fm, om.beta, om.gamma)
    if cp is None:
        cp = confounder_posterior(fm)

    beta_check = om.beta + cp.adjustment_matrix() @ om.gamma
    sigma2_y_t = om.sigma2_y_tu + float(om.gamma @ cp.cov @ om.gamma)
    return ObservedOutcomeParams(beta_check, sigma2_y_t)


def true_effects(beta_check, gamma, fm: FactorModel, cp: Optional[ConfounderPosterior] = None) -> np.ndarray:
    """Remove the confounding shift from the naive coefficients: ``beta = beta_check - (BB' + s I)^-1 B gamma``"""
    beta_check = as_vector(beta_check, 'beta_check')
    gamma = as_vector(gamma, 'gamma')
    _check_dims(fm, beta_check, gamma)
    if cp is None:
        cp = confounder_posterior(fm)
    return beta_check - cp.adjustment_matrix() @ gamma
