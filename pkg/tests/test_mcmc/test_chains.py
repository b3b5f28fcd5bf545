import numpy as np
import pytest

from ConfoundSens.factor import fit_ppca
from ConfoundSens.mcmc import PosteriorDraws, PriorRegime, RegimeKind, pointwise_loglik, run_chains, total_loglik


@pytest.fixture
def fitted(block_data):
    ds, _ = block_data
    return ds, fit_ppca(ds.treatments, 2)


@pytest.mark.parametrize('kind', (RegimeKind.R2_UNIFORM, RegimeKind.HORSESHOE))
def test_draw_count_and_chain_ids(fitted, kind):
    ds, fm = fitted
    draws = run_chains(ds, fm, PriorRegime(kind), n_iter=60, n_warmup=20, chains=3, seed=11)
    assert draws.n_draws == 3 * 40
    assert draws.n_chains == 3
    np.testing.assert_array_equal(draws.chain, np.repeat([0, 1, 2], 40))
    np.testing.assert_array_equal(draws.iteration, np.tile(np.arange(20, 60), 3))
    assert len(draws.metadata['chains']) == 3


def test_independent_of_workers(fitted):
    ds, fm = fitted
    regime = PriorRegime(RegimeKind.NEGATIVE_CONTROL, nc_indices=(0, ))
    a = run_chains(ds, fm, regime, 50, 10, chains=4, seed=3, workers=1)
    b = run_chains(ds, fm, regime, 50, 10, chains=4, seed=3, workers=3)
    np.testing.assert_array_equal(a.beta, b.beta)
    np.testing.assert_array_equal(a.sigma2_y_t, b.sigma2_y_t)

    c = run_chains(ds, fm, regime, 50, 10, chains=4, seed=4, workers=1)
    assert not np.array_equal(a.beta, c.beta)


def test_chains_differ(fitted):
    ds, fm = fitted
    draws = run_chains(ds, fm, PriorRegime(RegimeKind.FLAT_GAMMA), 20, 0, chains=2, seed=0)
    assert not np.array_equal(draws.beta[draws.chain == 0], draws.beta[draws.chain == 1])


def test_loglik(fitted):
    ds, fm = fitted
    draws = run_chains(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 30, 10, chains=2, seed=5, with_loglik=True)
    assert draws.pointwise_loglik.shape == (40, ds.n)
    np.testing.assert_allclose(draws.pointwise_loglik.sum(axis=1), total_loglik(draws, ds))
    np.testing.assert_allclose(draws.pointwise_loglik, pointwise_loglik(draws, ds))

    frame = draws.loglik_frame()
    assert list(frame.columns[:3]) == ['chain', 'iter', 'obs_1']
    assert frame.shape == (40, ds.n + 2)


def test_summary(fitted):
    ds, fm = fitted
    draws = run_chains(ds, fm, PriorRegime(RegimeKind.R2_UNIFORM), 400, 200, chains=3, seed=1)
    summary = draws.summary()
    assert summary.n_draws == 600
    assert summary.chains == 3
    assert 'chains' not in summary.metadata

    params = {p.name: p for p in summary.parameters}
    assert len(params) == 2 * ds.k + fm.m + 2
    for p in params.values():
        assert p.q025 <= p.q50 <= p.q975
    # independent draws, the chains agree
    assert params['beta_check_1'].rhat == pytest.approx(1, abs=0.05)
    assert params['beta_1'].rhat is None
    # naive effects are far from zero
    assert params['beta_check_1'].significant


def test_frame(fitted):
    ds, fm = fitted
    draws = run_chains(ds, fm, PriorRegime(RegimeKind.FLAT_GAMMA), 10, 5, chains=2, seed=1)
    frame = draws.to_frame()
    assert list(frame.columns) == [f'beta_{i}' for i in range(1, 11)] + ['gamma_1', 'gamma_2', 'r2', 'sigma2',
                                                                          'chain', 'iter']
    assert frame.shape == (10, 16)

    with pytest.raises(ValueError):
        draws.loglik_frame()


def test_concat_checks_rows():
    with pytest.raises(ValueError):
        PosteriorDraws.concat([])
    with pytest.raises(ValueError):
        PosteriorDraws(beta=np.zeros((3, 2)), gamma=np.zeros((2, 1)), r2=np.zeros(3), sigma2_y_t=np.ones(3),
                       beta_check=np.zeros((3, 2)), chain=np.zeros(3), iteration=np.arange(3), regime='x')


def test_bias():
    draws = PosteriorDraws(beta=np.zeros((2, 2)), gamma=np.array([[1.0, 0.0], [0.0, 2.0]]), r2=np.zeros(2),
                           sigma2_y_t=np.ones(2), beta_check=np.zeros((2, 2)), chain=np.zeros(2),
                           iteration=np.arange(2), regime='x')
    np.testing.assert_allclose(draws.bias(np.array([3.0, 1.0])), [3.0, 2.0])
