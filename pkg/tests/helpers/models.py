import typing

import numpy as np

from ConfoundSens.bounds import ContrastSet, nc_geometry, NCGeometry
from ConfoundSens.model import ConfounderPosterior, Contrast, FactorModel, ObservedOutcomeParams, OutcomeModel, \
    confounder_posterior, observed_params


def random_factor_model(gen: np.random.Generator, k: int, m: int) -> FactorModel:
    return FactorModel(gen.normal(size=(k, m)), float(gen.uniform(0.3, 2.0)))


def random_orthogonal(gen: np.random.Generator, m: int) -> np.ndarray:
    q, r = np.linalg.qr(gen.normal(size=(m, m)))
    return q * np.sign(np.diag(r))


def random_contrast(gen: np.random.Generator, k: int, name: str = 'c') -> Contrast:
    return Contrast(gen.normal(size=k), gen.normal(size=k), name)


class Instance(typing.NamedTuple):
    fm: FactorModel
    cp: ConfounderPosterior
    om: OutcomeModel
    observed: ObservedOutcomeParams
    target: Contrast
    controls: typing.List[Contrast]
    geo: NCGeometry
    tau: np.ndarray


def random_instance(gen: np.random.Generator, k: int, m: int, c: int) -> Instance:
    """Random model where the negative controls really have no effect, so they are always compatible"""
    fm = random_factor_model(gen, k, m)
    cp = confounder_posterior(fm)
    controls = [random_contrast(gen, k, f'nc{i}') for i in range(c)]
    target = random_contrast(gen, k, 'target')

    # beta orthogonal to every negative control contrast
    beta = gen.normal(size=k)
    if c:
        deltas = np.array([nc.delta for nc in controls])
        beta -= deltas.T @ np.linalg.lstsq(deltas.T, beta, rcond=None)[0]

    om = OutcomeModel(beta, gen.normal(size=m), float(gen.uniform(0.5, 2)))
    observed = observed_params(om, fm, cp)
    geo = nc_geometry(cp, ContrastSet.build([target], controls))
    tau = np.array([observed.beta_check @ nc.delta for nc in controls])
    return Instance(fm, cp, om, observed, target, controls, geo, tau)
