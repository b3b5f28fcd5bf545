import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, frozen
from ConfoundSens.core.rng import RngStream
from ConfoundSens.mcmc import Dataset
from ConfoundSens.model import ConfounderPosterior, FactorModel, ObservedOutcomeParams, OutcomeModel, \
    confounder_posterior

log = logging.getLogger('ConfoundSens.Sim')


class LoadingPattern(str, Enum):
    PAPER_S4 = 'PAPER_S4'
    CUSTOM = 'CUSTOM'


class Variant(str, Enum):
    NULL_EFFECTS = 'NULL_EFFECTS'
    NO_CONFOUNDING = 'NO_CONFOUNDING'
    OPPOSITE_BIAS = 'OPPOSITE_BIAS'


@dataclass(frozen=True, eq=False)
class DGPConfig:
    """Configuration of a simulated dataset.

    With ``PAPER_S4`` the treatments are split into m contiguous blocks. All rows of B inside a block are
    identical and point along one confounder, so rows of different blocks are orthogonal. Block j has the
    signal fraction ``signal_fraction[j]`` (the last value repeats) and gamma is chosen such that the naive
    coefficients are ``+naive_shift`` in even and ``-naive_shift`` in odd blocks.
    The default fractions (1/8, 1/2) make a single negative control on the first treatment give
    ``r2_min = 1/3`` at ``r2_target = 0.5``, so the controls narrow the bounds without pinning them.
    ``signal_fraction=(0.5,)`` gives loadings where BB' makes up half of every treatment variance.

    With ``CUSTOM`` the loadings ``B`` are given, gamma points along ``gamma_direction`` (default: all ones)
    and ``sigma2_y_tu`` is the residual variance of the confounded variants.
    """
    n: int = 1000
    k: int = 10
    m: int = 2
    beta_true: Optional[np.ndarray] = None
    r2_target: float = 0.5
    loading_pattern: LoadingPattern = LoadingPattern.PAPER_S4
    variant: Variant = Variant.NULL_EFFECTS
    seed: int = 0

    sigma2_t_u: float = 1.0
    signal_fraction: Tuple[float, ...] = (0.125, 0.5)
    naive_shift: float = 1.0
    B: Optional[np.ndarray] = field(default=None, repr=False)
    gamma_direction: Optional[np.ndarray] = None
    sigma2_y_tu: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'loading_pattern', LoadingPattern(self.loading_pattern))
        object.__setattr__(self, 'variant', Variant(self.variant))

        if self.n < 1:
            raise InvalidParameterError.out_of_range('n', self.n, lower=1)
        if not 1 <= self.m <= self.k:
            raise InvalidParameterError(f'Dimensions must satisfy 1 <= m <= k, got k={self.k}, m={self.m}')
        if not 0 <= self.r2_target < 1:
            raise InvalidParameterError(f'r2_target must be in [0, 1), got {self.r2_target}')
        if not self.sigma2_t_u > 0 or not self.sigma2_y_tu > 0:
            raise InvalidParameterError('Noise variances must be positive')

        beta = np.zeros(self.k) if self.beta_true is None else as_vector(self.beta_true, 'beta_true', self.k)
        object.__setattr__(self, 'beta_true', frozen(beta))

        fractions = tuple(float(k) for k in self.signal_fraction)
        if not fractions or any(not 0 < k < 1 for k in fractions):
            raise InvalidParameterError(f'Signal fractions must be in (0, 1), got {fractions}')
        object.__setattr__(self, 'signal_fraction', fractions)

        if self.loading_pattern is LoadingPattern.CUSTOM:
            if self.B is None:
                raise InvalidParameterError('Loading pattern CUSTOM requires B')
            b = np.asarray(self.B, dtype=float)
            if b.shape != (self.k, self.m):
                raise DimensionMismatchError.from_shapes('B', (self.k, self.m), b.shape)
            object.__setattr__(self, 'B', frozen(b))
            direction = np.ones(self.m) if self.gamma_direction is None else \
                as_vector(self.gamma_direction, 'gamma_direction', self.m)
            object.__setattr__(self, 'gamma_direction', frozen(direction))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'k': self.k, 'm': self.m, 'beta_true': self.beta_true.tolist(),
            'r2_target': self.r2_target, 'loading_pattern': self.loading_pattern.value,
            'variant': self.variant.value, 'seed': self.seed, 'sigma2_t_u': self.sigma2_t_u,
            'signal_fraction': list(self.signal_fraction), 'naive_shift': self.naive_shift,
            'B': None if self.B is None else self.B.tolist(),
            'gamma_direction': None if self.gamma_direction is None else self.gamma_direction.tolist(),
            'sigma2_y_tu': self.sigma2_y_tu,
        }


@dataclass(frozen=True, eq=False)
class GroundTruth:
    B: np.ndarray
    gamma: np.ndarray
    beta: np.ndarray
    sigma2_y_tu: float
    sigma2_t_u: float
    beta_check: np.ndarray
    sigma2_y_t: float

    @property
    def r2(self) -> float:
        return 1 - self.sigma2_y_tu / self.sigma2_y_t

    def factor_model(self) -> FactorModel:
        return FactorModel(self.B, self.sigma2_t_u)

    def outcome_model(self) -> OutcomeModel:
        return OutcomeModel(self.beta, self.gamma, self.sigma2_y_tu)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'B': self.B.tolist(), 'gamma': self.gamma.tolist(), 'beta': self.beta.tolist(),
            'sigma2_y_tu': self.sigma2_y_tu, 'sigma2_t_u': self.sigma2_t_u,
            'beta_check': self.beta_check.tolist(), 'sigma2_y_t': self.sigma2_y_t, 'r2': self.r2,
        }


def treatment_blocks(k: int, m: int) -> List[np.ndarray]:
    return np.array_split(np.arange(k), m)


def _confounded_truth(cfg: DGPConfig) -> Tuple[FactorModel, np.ndarray, float]:
    """Loadings, gamma and residual variance of the confounded (null effects) setting"""
    if cfg.loading_pattern is LoadingPattern.PAPER_S4:
        if cfg.r2_target <= 0:
            raise InvalidParameterError('Infeasible scaling: shifted naive coefficients need r2_target > 0')

        s = cfg.sigma2_t_u
        B = np.zeros((cfg.k, cfg.m))
        gamma = np.zeros(cfg.m)
        for j, block in enumerate(treatment_blocks(cfg.k, cfg.m)):
            rho = cfg.signal_fraction[min(j, len(cfg.signal_fraction) - 1)]
            a = np.sqrt(s * rho / (1 - rho))
            B[block, j] = a
            sign = 1 if j % 2 == 0 else -1
            gamma[j] = sign * cfg.naive_shift * (block.size * a ** 2 + s) / a

        fm = FactorModel(B, s)
        q = float(gamma @ confounder_posterior(fm).cov @ gamma)
        return fm, gamma, q * (1 - cfg.r2_target) / cfg.r2_target

    fm = FactorModel(cfg.B, cfg.sigma2_t_u)
    if cfg.r2_target == 0:
        return fm, np.zeros(cfg.m), cfg.sigma2_y_tu

    direction = cfg.gamma_direction
    q_unit = float(direction @ confounder_posterior(fm).cov @ direction)
    if not q_unit > 0:
        raise InvalidParameterError('Infeasible scaling: gamma_direction must be a non zero vector')
    scale = np.sqrt(cfg.r2_target / (1 - cfg.r2_target) * cfg.sigma2_y_tu / q_unit)
    return fm, scale * direction, cfg.sigma2_y_tu


def ground_truth(cfg: DGPConfig) -> GroundTruth:
    """True parameters of the configuration. All variants share the observed data distribution,
    the identified parameters are computed once from the confounded setting."""
    fm, gamma, sigma2_y_tu = _confounded_truth(cfg)
    cp = confounder_posterior(fm)
    bias = cp.adjustment_matrix() @ gamma
    q = float(gamma @ cp.cov @ gamma)
    beta_check, sigma2_y_t = cfg.beta_true + bias, sigma2_y_tu + q

    if cfg.variant is Variant.NULL_EFFECTS:
        beta = cfg.beta_true.copy()
    elif cfg.variant is Variant.OPPOSITE_BIAS:
        beta, gamma = cfg.beta_true + 2 * bias, -gamma
    else:
        beta, gamma, sigma2_y_tu = beta_check, np.zeros(cfg.m), sigma2_y_t

    return GroundTruth(frozen(fm.B), frozen(gamma), frozen(beta), float(sigma2_y_tu), fm.sigma2_t_u,
                       frozen(beta_check), float(sigma2_y_t))


def population_params(cfg: DGPConfig) -> Tuple[ObservedOutcomeParams, ConfounderPosterior]:
    """Exact identified parameters of the configuration, no sampling"""
    truth = ground_truth(cfg)
    cp = confounder_posterior(truth.factor_model())
    return ObservedOutcomeParams(truth.beta_check, truth.sigma2_y_t), cp


def simulate_arrays(cfg: DGPConfig, rng: Optional[RngStream] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray,
                                                                               GroundTruth]:
    """:return: confounders, treatments, outcome and the ground truth"""
    truth = ground_truth(cfg)
    gen = (rng if rng is not None else RngStream(cfg.seed)).generator

    u = gen.standard_normal((cfg.n, cfg.m))
    t = u @ truth.B.T + np.sqrt(truth.sigma2_t_u) * gen.standard_normal((cfg.n, cfg.k))
    y = t @ truth.beta + u @ truth.gamma + np.sqrt(truth.sigma2_y_tu) * gen.standard_normal(cfg.n)
    return u, t, y, truth


def generate(cfg: DGPConfig, rng: Optional[RngStream] = None) -> Tuple[Dataset, GroundTruth]:
    """Simulate a dataset, the stream defaults to one seeded with ``cfg.seed``"""
    _, t, y, truth = simulate_arrays(cfg, rng)
    log.debug(f'Simulated n={cfg.n}, k={cfg.k}, m={cfg.m}, variant={cfg.variant.value}, r2={truth.r2:.3f}')
    return Dataset.from_arrays(t, y, [f't_{i + 1}' for i in range(cfg.k)]), truth


def sweep_configs(base: DGPConfig, ks: Iterable[int] = (5, 10, 20), ns: Iterable[int] = (100, 1000),
                  replicates: int = 1) -> List[DGPConfig]:
    """Grid of configurations over k and n, every configuration gets its own seed"""
    out = []
    for k in ks:
        for n in ns:
            for _ in range(replicates):
                out.append(replace(base, k=k, n=n, beta_true=None if base.beta_true.shape[0] != k else base.beta_true,
                                   seed=base.seed + len(out)))
    return out
