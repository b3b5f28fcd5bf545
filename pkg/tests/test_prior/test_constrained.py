import numpy as np
import pytest

from ConfoundSens.bounds import nc_interval, r2_min
from ConfoundSens.core.errors import InfeasibleSensitivityError
from ConfoundSens.model import mu_delta
from ConfoundSens.prior import minimal_gamma, sample_gamma_nc
from tests.helpers import random_instance


def test_constraints_hold(gen, rng):
    inst = random_instance(gen, 6, 3, 1)
    s2 = inst.observed.sigma2_y_t
    r2_lo = r2_min(inst.geo, inst.tau, s2)
    r2 = (r2_lo + 1) / 2

    gamma = sample_gamma_nc(inst.geo, inst.cp, inst.tau, s2, r2, 500, rng)
    q = np.einsum('ij,jk,ik->i', gamma, inst.cp.cov, gamma)
    np.testing.assert_allclose(q, r2 * s2, rtol=1e-10)
    np.testing.assert_allclose(gamma @ mu_delta(inst.cp, inst.controls[0]), inst.tau[0], atol=1e-10)

    # the bias of the target stays inside the interval
    bias = gamma @ mu_delta(inst.cp, inst.target)
    interval = nc_interval(inst.geo, inst.cp, inst.target, inst.tau, s2, r2, 0.0)
    assert bias.min() >= interval.lo - 1e-9
    assert bias.max() <= interval.hi + 1e-9


def test_minimal_gamma(gen):
    inst = random_instance(gen, 5, 2, 1)
    g = minimal_gamma(inst.geo, inst.cp, inst.tau)
    s2 = inst.observed.sigma2_y_t
    assert g @ inst.cp.cov @ g / s2 == pytest.approx(r2_min(inst.geo, inst.tau, s2))
    assert g @ mu_delta(inst.cp, inst.controls[0]) == pytest.approx(inst.tau[0])


def test_identified(gen, rng):
    # c = m: gamma is fixed by the controls
    inst = random_instance(gen, 5, 2, 2)
    s2 = inst.observed.sigma2_y_t
    r2_lo = r2_min(inst.geo, inst.tau, s2)
    gamma = sample_gamma_nc(inst.geo, inst.cp, inst.tau, s2, r2_lo, 3, rng)
    np.testing.assert_allclose(gamma, np.tile(inst.om.gamma, (3, 1)), atol=1e-8)

    with pytest.raises(InfeasibleSensitivityError):
        sample_gamma_nc(inst.geo, inst.cp, inst.tau, s2, min(1.0, r2_lo + 0.1), 3, rng)


def test_below_r2_min(gen, rng):
    inst = random_instance(gen, 5, 2, 1)
    s2 = inst.observed.sigma2_y_t
    with pytest.raises(InfeasibleSensitivityError):
        sample_gamma_nc(inst.geo, inst.cp, inst.tau, s2, r2_min(inst.geo, inst.tau, s2) / 2, 3, rng)


@pytest.mark.parametrize('k, m, c', ((5, 2, 1), (6, 3, 1), (8, 4, 2)))
def test_extremes_reach_interval(gen, rng, k, m, c):
    inst = random_instance(gen, k, m, c)
    s2 = inst.observed.sigma2_y_t
    r2 = (r2_min(inst.geo, inst.tau, s2) + 1) / 2

    gamma = sample_gamma_nc(inst.geo, inst.cp, inst.tau, s2, r2, 100_000, rng)
    bias = gamma @ mu_delta(inst.cp, inst.target)
    interval = nc_interval(inst.geo, inst.cp, inst.target, inst.tau, s2, r2, 0.0)
    width = interval.hi - interval.lo
    assert width > 0
    assert bias.max() == pytest.approx(interval.hi, abs=0.01 * width)
    assert bias.min() == pytest.approx(interval.lo, abs=0.01 * width)
