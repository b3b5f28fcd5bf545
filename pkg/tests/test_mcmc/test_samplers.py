import numpy as np
import pytest
import scipy.stats

from ConfoundSens.core.errors import DegenerateDataError, InfeasibleSensitivityError, InvalidParameterError
from ConfoundSens.core.rng import RngStream
from ConfoundSens.factor import fit_ppca
from ConfoundSens.mcmc import Dataset, NaiveRegression, PriorRegime, RegimeKind, run_chains, sample, \
    sample_flat_gamma, sample_horseshoe, sample_negative_control, sample_transparent
from ConfoundSens.model import Contrast, FactorModel, confounder_posterior, mu_delta
from ConfoundSens.sim import DGPConfig, LoadingPattern, generate


@pytest.fixture
def fitted(block_data):
    ds, truth = block_data
    return ds, fit_ppca(ds.treatments, 2), truth


def test_transparent_zero_r2_is_naive(fitted):
    ds, fm, _ = fitted
    draws = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM, r2_upper=0), 400, 200, RngStream(3))
    beta_check, sigma2 = NaiveRegression(ds).draw(200, RngStream(3))
    np.testing.assert_allclose(draws.beta, beta_check, atol=1e-12)
    np.testing.assert_allclose(draws.sigma2_y_t, sigma2)
    assert np.all(draws.r2 == 0)


def test_transparent(fitted):
    ds, fm, _ = fitted
    cp = confounder_posterior(fm)
    draws = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM, r2_upper=0.4), 2000, 0, RngStream(3))
    assert draws.n_draws == 2000
    assert draws.feasible(cp)
    assert draws.r2.max() <= 0.4 + 1e-12
    assert draws.r2.mean() == pytest.approx(0.2, abs=0.02)
    np.testing.assert_allclose(draws.beta_check.mean(axis=0), NaiveRegression(ds).beta_hat, atol=0.05)
    np.testing.assert_allclose(draws.iteration, np.arange(2000))


def test_flat_gamma_prefers_large_r2():
    for seed in range(5):
        ds, _ = generate(DGPConfig(seed=seed))
        fm = fit_ppca(ds.treatments, 2)
        flat = sample_flat_gamma(ds, fm, 2000, 1000, RngStream(seed))
        uniform = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 2000, 1000, RngStream(seed))
        assert flat.feasible(confounder_posterior(fm))
        assert flat.r2.mean() > uniform.r2.mean()
        assert flat.r2.mean() > 0.5


def test_flat_gamma_needs_observations(gen):
    fm = FactorModel(gen.normal(size=(3, 1)), 1.0)
    t, y = gen.normal(size=(7, 3)), gen.normal(size=7)

    with pytest.raises(DegenerateDataError, match=r'n > k \+ m \+ 2'):
        sample_flat_gamma(Dataset.from_arrays(t[:6], y[:6]), fm, 10, 5, RngStream(0))

    draws = sample_flat_gamma(Dataset.from_arrays(t, y), fm, 10, 5, RngStream(0))
    assert draws.n_draws == 5
    assert np.all(draws.sigma2_y_t > 0)


def test_negative_control(fitted):
    ds, fm, _ = fitted
    cp = confounder_posterior(fm)
    regime = PriorRegime(RegimeKind.NEGATIVE_CONTROL, nc_indices=(0, ))
    draws = sample_negative_control(ds, fm, regime, 1000, 500, RngStream(5))

    assert np.all(draws.beta[:, 0] == 0)
    assert draws.feasible(cp)
    assert draws.metadata['nc_compatible']
    assert draws.metadata['nc_rank'] == 1
    # r2 is uniform above the bound implied by the control effect, which is about 1/3
    assert draws.r2.mean() > 0.5

    # treatment 2 loads on the same confounder as the control, its effect is pinned near the truth
    b1 = draws.beta[:, 1]
    assert abs(b1.mean()) < 3 * b1.std()
    free = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 1000, 500, RngStream(5))
    assert b1.std() < free.beta[:, 1].std()


def test_negative_control_identified(fitted):
    ds, fm, _ = fitted
    regime = PriorRegime(RegimeKind.NEGATIVE_CONTROL, nc_indices=(0, 5))
    draws = sample_negative_control(ds, fm, regime, 600, 300, RngStream(5))
    assert draws.metadata['nc_rank'] == 2
    # gamma is identified by the two controls, the r2 spread comes only from the naive fit
    np.testing.assert_allclose(draws.beta[:, [0, 5]], 0)
    mean, sd = draws.beta.mean(axis=0), draws.beta.std(axis=0)
    assert np.all(np.abs(mean) <= 4 * sd)


def test_negative_control_without_bite():
    # t_1 does not load on the confounders, so its naive effect is zero and the control constrains nothing
    B = np.zeros((6, 2))
    B[1:4, 0] = 1.0
    B[3:, 1] = 1.0
    ds, truth = generate(DGPConfig(n=1000, k=6, m=2, r2_target=0.3, loading_pattern=LoadingPattern.CUSTOM,
                                   B=B, seed=2))
    fm = truth.factor_model()
    mu = mu_delta(confounder_posterior(fm), Contrast.coordinate(6, 1))

    regime = PriorRegime(RegimeKind.NEGATIVE_CONTROL, nc_indices=(0, ))
    nc = sample_negative_control(ds, fm, regime, 2000, 0, RngStream(1))
    free = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 2000, 0, RngStream(2))

    assert nc.metadata['nc_rank'] == 0
    assert scipy.stats.ks_2samp(nc.bias(mu), free.bias(mu)).pvalue > 0.01


def test_negative_control_infeasible(fitted):
    ds, fm, _ = fitted
    regime = PriorRegime(RegimeKind.NEGATIVE_CONTROL, nc_indices=(0, ), r2_upper=0.01)
    with pytest.raises(InfeasibleSensitivityError):
        sample_negative_control(ds, fm, regime, 20, 10, RngStream(5))


def test_horseshoe_recovery():
    for seed in range(5):
        ds, truth = generate(DGPConfig(seed=100 + seed))
        fm = fit_ppca(ds.treatments, 2)
        hs = sample_horseshoe(ds, fm, PriorRegime(RegimeKind.HORSESHOE), 600, 300, RngStream(seed))
        flat = sample_flat_gamma(ds, fm, 600, 300, RngStream(seed))

        assert hs.feasible(confounder_posterior(fm))
        rmse_hs = np.sqrt(np.mean((hs.beta.mean(axis=0) - truth.beta) ** 2))
        rmse_flat = np.sqrt(np.mean((flat.beta.mean(axis=0) - truth.beta) ** 2))
        assert rmse_hs < rmse_flat


def test_horseshoe_chains_converge(fitted):
    ds, fm, _ = fitted
    draws = run_chains(ds, fm, PriorRegime(RegimeKind.HORSESHOE), n_iter=4000, n_warmup=2000, chains=4, seed=21)
    rhat = draws.rhat()
    assert max(rhat.values()) < 1.05, rhat


def test_horseshoe_coverage_dense_effects():
    # two blocks of ten treatments, effects of alternating sign and no confounding
    k = 20
    B = np.zeros((k, 2))
    B[:10, 0] = 1.0
    B[10:, 1] = 1.0
    beta_true = 3.0 * np.where(np.arange(k) % 2 == 0, 1.0, -1.0)
    ds, truth = generate(DGPConfig(n=2000, k=k, m=2, beta_true=beta_true, r2_target=0.0,
                                   loading_pattern=LoadingPattern.CUSTOM, B=B, seed=5))
    assert np.all(truth.gamma == 0)

    fm = fit_ppca(ds.treatments, 2)
    draws = sample_horseshoe(ds, fm, PriorRegime(RegimeKind.HORSESHOE), 1500, 500, RngStream(6))
    lo, hi = np.quantile(draws.beta, [0.025, 0.975], axis=0)
    covered = (lo <= truth.beta) & (truth.beta <= hi)
    assert covered.mean() >= 0.9


def test_horseshoe_wide_slab_matches_transparent(fitted):
    ds, fm, _ = fitted
    regime = PriorRegime(RegimeKind.HORSESHOE, r2_upper=0.1, horseshoe_scale=1e6, horseshoe_slab=1e6)
    hs = sample_horseshoe(ds, fm, regime, 3000, 500, RngStream(8))
    tr = sample_transparent(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM, r2_upper=0.1), 3000, 500, RngStream(9))
    np.testing.assert_allclose(hs.beta.mean(axis=0), tr.beta.mean(axis=0), atol=0.05)
    assert hs.r2.mean() == pytest.approx(tr.r2.mean(), abs=0.01)


def test_horseshoe_nc(fitted):
    ds, fm, _ = fitted
    regime = PriorRegime(RegimeKind.HORSESHOE_NC, nc_indices=(0, 5))
    draws = sample_horseshoe(ds, fm, regime, 400, 200, RngStream(4))
    assert draws.metadata['shrunk_indices'] == [0, 5]
    assert draws.feasible(confounder_posterior(fm))


def test_wrong_regime(fitted):
    ds, fm, _ = fitted
    with pytest.raises(InvalidParameterError):
        sample_transparent(ds, fm, PriorRegime(RegimeKind.HORSESHOE), 10, 5, RngStream(0))
    with pytest.raises(InvalidParameterError):
        sample_negative_control(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 10, 5, RngStream(0))
    with pytest.raises(InvalidParameterError):
        sample(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 10, 10, RngStream(0))


@pytest.mark.parametrize('kind', tuple(RegimeKind))
def test_dispatch(fitted, kind):
    ds, fm, _ = fitted
    regime = PriorRegime(kind, nc_indices=(0, ) if kind in (RegimeKind.NEGATIVE_CONTROL, RegimeKind.HORSESHOE_NC)
                         else ())
    draws = sample(ds, fm, regime, 40, 20, RngStream(0))
    assert draws.n_draws == 20
    assert draws.regime == kind.value
    assert draws.iteration[0] == 20

