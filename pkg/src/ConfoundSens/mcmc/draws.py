from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ConfoundSens.core.linalg import frozen
from ConfoundSens.model import ConfounderPosterior
from .diagnostics import split_rhat

# relative tolerance of the per draw constraint gamma' Sigma gamma <= sigma2_y_t
FEASIBILITY_TOL = 1e-8


class ParameterSummary(BaseModel):
    name: str
    mean: float
    sd: float
    q025: float
    q50: float
    q975: float
    significant: bool
    rhat: Optional[float]


class DrawsSummary(BaseModel):
    regime: str
    n_draws: int
    chains: int
    parameters: List[ParameterSummary]
    metadata: Dict[str, Any]


@dataclass(frozen=True, eq=False)
class PosteriorDraws:
    """Posterior draws, one row per retained iteration

    :ivar ~.beta: causal coefficients (n_draws x k)
    :ivar ~.gamma: confounder coefficients (n_draws x m)
    :ivar ~.r2: ``gamma' Sigma gamma / sigma2_y_t`` per draw
    :ivar ~.sigma2_y_t: residual variance given the treatments
    :ivar ~.beta_check: naive coefficients implied by the draw
    :ivar ~.chain: chain id of the draw
    :ivar ~.iteration: iteration index inside the chain (after warmup)
    :ivar ~.pointwise_loglik: per observation log density (n_draws x n), if computed
    :ivar ~.metadata: sampler settings and diagnostics
    """
    beta: np.ndarray
    gamma: np.ndarray
    r2: np.ndarray
    sigma2_y_t: np.ndarray
    beta_check: np.ndarray
    chain: np.ndarray
    iteration: np.ndarray
    regime: str
    pointwise_loglik: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ('beta', 'gamma', 'r2', 'sigma2_y_t', 'beta_check', 'chain', 'iteration'):
            object.__setattr__(self, name, frozen(getattr(self, name)))
        if self.pointwise_loglik is not None:
            object.__setattr__(self, 'pointwise_loglik', frozen(self.pointwise_loglik))

        n = self.beta.shape[0]
        for name in ('gamma', 'r2', 'sigma2_y_t', 'beta_check', 'chain', 'iteration'):
            if getattr(self, name).shape[0] != n:
                raise ValueError(f'{name} has {getattr(self, name).shape[0]} rows, expected {n}')

    @property
    def n_draws(self) -> int:
        return self.beta.shape[0]

    @property
    def k(self) -> int:
        return self.beta.shape[1]

    @property
    def m(self) -> int:
        return self.gamma.shape[1]

    @property
    def n_chains(self) -> int:
        return int(np.unique(self.chain).size)

    def feasible(self, cp: ConfounderPosterior) -> bool:
        """Every draw satisfies ``gamma' Sigma gamma <= sigma2_y_t`` and ``r2`` matches that quadratic form"""
        q = np.einsum('ij,jk,ik->i', self.gamma, cp.cov, self.gamma)
        ok_bound = np.all(q <= self.sigma2_y_t * (1 + FEASIBILITY_TOL))
        ok_r2 = np.allclose(q / self.sigma2_y_t, self.r2, rtol=0, atol=FEASIBILITY_TOL)
        return bool(ok_bound and ok_r2)

    def bias(self, mu_d: np.ndarray) -> np.ndarray:
        """Confounding bias of a contrast per draw"""
        return self.gamma @ np.asarray(mu_d, dtype=float)

    def with_loglik(self, loglik: np.ndarray) -> 'PosteriorDraws':
        return replace(self, pointwise_loglik=loglik)

    @classmethod
    def concat(cls, parts: Sequence['PosteriorDraws']) -> 'PosteriorDraws':
        parts = list(parts)
        if not parts:
            raise ValueError('Nothing to concatenate')

        loglik = None
        if all(p.pointwise_loglik is not None for p in parts):
            loglik = np.vstack([p.pointwise_loglik for p in parts])

        metadata = dict(parts[0].metadata)
        if len(parts) > 1:
            metadata['chains'] = [p.metadata for p in parts]

        return cls(
            beta=np.vstack([p.beta for p in parts]),
            gamma=np.vstack([p.gamma for p in parts]),
            r2=np.concatenate([p.r2 for p in parts]),
            sigma2_y_t=np.concatenate([p.sigma2_y_t for p in parts]),
            beta_check=np.vstack([p.beta_check for p in parts]),
            chain=np.concatenate([p.chain for p in parts]),
            iteration=np.concatenate([p.iteration for p in parts]),
            regime=parts[0].regime,
            pointwise_loglik=loglik,
            metadata=metadata,
        )

    def to_frame(self) -> pd.DataFrame:
        cols: Dict[str, np.ndarray] = {}
        for i in range(self.k):
            cols[f'beta_{i + 1}'] = self.beta[:, i]
        for j in range(self.m):
            cols[f'gamma_{j + 1}'] = self.gamma[:, j]
        cols['r2'] = self.r2
        cols['sigma2'] = self.sigma2_y_t
        cols['chain'] = self.chain.astype(int)
        cols['iter'] = self.iteration.astype(int)
        return pd.DataFrame(cols)

    def loglik_frame(self) -> pd.DataFrame:
        if self.pointwise_loglik is None:
            raise ValueError('Pointwise log likelihood has not been computed')
        frame = pd.DataFrame(self.pointwise_loglik, columns=[f'obs_{i + 1}' for i in range(self.pointwise_loglik.shape[1])])
        frame.insert(0, 'iter', self.iteration.astype(int))
        frame.insert(0, 'chain', self.chain.astype(int))
        return frame

    def rhat(self) -> Dict[str, float]:
        """Split chain R-hat of the identified parameters"""
        out = {f'beta_check_{i + 1}': split_rhat(self.beta_check[:, i], self.chain) for i in range(self.k)}
        out['sigma2'] = split_rhat(self.sigma2_y_t, self.chain)
        return out

    def summary(self) -> DrawsSummary:
        rhat = self.rhat() if self.n_chains > 1 else {}

        def _summarize(name: str, values: np.ndarray, rhat_value: Optional[float] = None) -> ParameterSummary:
            q025, q50, q975 = np.percentile(values, [2.5, 50, 97.5])
            return ParameterSummary(
                name=name, mean=float(values.mean()), sd=float(values.std(ddof=1)) if values.size > 1 else 0.0,
                q025=float(q025), q50=float(q50), q975=float(q975),
                significant=bool(q025 > 0 or q975 < 0),
                rhat=None if rhat_value is None or not np.isfinite(rhat_value) else float(rhat_value)
            )

        params = [_summarize(f'beta_{i + 1}', self.beta[:, i]) for i in range(self.k)]
        params += [_summarize(f'beta_check_{i + 1}', self.beta_check[:, i], rhat.get(f'beta_check_{i + 1}'))
                   for i in range(self.k)]
        params += [_summarize(f'gamma_{j + 1}', self.gamma[:, j]) for j in range(self.m)]
        params.append(_summarize('r2', self.r2))
        params.append(_summarize('sigma2', self.sigma2_y_t, rhat.get('sigma2')))

        meta = {k: v for k, v in self.metadata.items() if k != 'chains'}
        return DrawsSummary(regime=self.regime, n_draws=self.n_draws, chains=self.n_chains, parameters=params,
                            metadata=meta)
