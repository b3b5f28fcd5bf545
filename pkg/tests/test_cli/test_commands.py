import logging

import numpy as np
import pandas as pd
import pytest

from ConfoundSens.cli import BoundsRunConfig, Prop1RunConfig, SampleRunConfig, ScreeRunConfig, \
    SimulateRunConfig, cmd_bounds, cmd_prop1, cmd_sample, cmd_scree, cmd_simulate, load_dataset, read_json, \
    write_json
from ConfoundSens.core.errors import InfeasibleSensitivityError, InvalidParameterError
from ConfoundSens.factor import scree


def _bounds_cfg(tmp_path, csv, **kwargs) -> BoundsRunConfig:
    params = dict(out_dir=tmp_path / 'out', input=csv, outcome_col='y', m=2, r2_grid=[0, 0.2, 0.5, 1], tol=0.05)
    params.update(kwargs)
    return BoundsRunConfig(**params)


def _sample_cfg(tmp_path, csv, **kwargs) -> SampleRunConfig:
    params = dict(out_dir=tmp_path / 'out', input=csv, outcome_col='y', m=2, regime='R2_UNIFORM', iters=40,
                  warmup=20, chains=2, r2_upper=1.0, nonnull_fraction=0.1, slab_scale=2.0, seed=1)
    params.update(kwargs)
    return SampleRunConfig(**params)


def test_simulate(tmp_path, sim_csv):
    frame = pd.read_csv(sim_csv)
    assert list(frame.columns) == [f't_{i}' for i in range(1, 11)] + ['y']
    assert frame.shape == (2000, 11)

    truth = read_json(sim_csv.parent / 'simulated_truth.json')
    assert truth['truth']['r2'] == pytest.approx(0.5)
    assert truth['dgp']['variant'] == 'NULL_EFFECTS'

    meta = read_json(sim_csv.parent / 'simulate_metadata.json')
    assert meta['command'] == 'simulate'
    assert meta['seeds'] == {'seed': 7}
    assert meta['config']['n'] == 2000

    before = {p.name: p.read_bytes() for p in sim_csv.parent.iterdir()}
    cmd_simulate(SimulateRunConfig(out_dir=sim_csv.parent, n=2000, seed=7))
    assert {p.name: p.read_bytes() for p in sim_csv.parent.iterdir()} == before


def test_simulate_config_checks(tmp_path):
    with pytest.raises(ValueError):
        SimulateRunConfig(out_dir=tmp_path, k=3, m=4)
    with pytest.raises(ValueError):
        SimulateRunConfig(out_dir=tmp_path, dgp='CUSTOM')
    with pytest.raises(ValueError):
        SimulateRunConfig(out_dir=tmp_path, unknown=1)


def test_scree(tmp_path, sim_csv):
    (path, _) = cmd_scree(ScreeRunConfig(out_dir=tmp_path / 'out', input=sim_csv, outcome_col='y'))
    frame = pd.read_csv(path)
    assert list(frame.columns) == ['rank', 'eigenvalue', 'cumulative_fraction']
    assert frame['rank'].tolist() == list(range(1, 11))

    expected = scree(load_dataset(sim_csv, 'y').treatments)
    np.testing.assert_allclose(frame['eigenvalue'], expected.eigenvalues, rtol=1e-12)
    assert frame['cumulative_fraction'].iloc[-1] == pytest.approx(1)
    # two confounders stand out
    assert frame['eigenvalue'][1] > 2 * frame['eigenvalue'][2]


def test_bounds_without_controls(tmp_path, sim_csv):
    cmd_bounds(_bounds_cfg(tmp_path, sim_csv))
    frame = pd.read_csv(tmp_path / 'out' / 'bounds.csv')
    assert frame.shape[0] == 10 * 4
    assert not frame['negative_control'].any()

    zero = frame[frame['r2'] == 0]
    np.testing.assert_allclose(zero['half_width'], 0)
    np.testing.assert_allclose(zero['pate_lo'], zero['naive_effect'])
    np.testing.assert_allclose(zero['pate_hi'], zero['naive_effect'])

    for _, group in frame.groupby('contrast_id'):
        assert np.all(np.diff(group['half_width'].to_numpy()) > 0)

    report = read_json(tmp_path / 'out' / 'bounds.json')
    assert [s['contrast_id'] for s in report['robustness']] == [f't_{i}' for i in range(1, 11)]
    assert all(s['robust_r2_negative_control'] is None for s in report['robustness'])


def test_bounds_with_control(tmp_path, large_csv, nc_file):
    cmd_bounds(_bounds_cfg(tmp_path, large_csv, nc_spec=nc_file))
    report = read_json(tmp_path / 'out' / 'bounds.json')
    assert report['diagnostics']['r2_min'] == pytest.approx(1 / 3, abs=0.1)
    assert report['diagnostics']['n_controls'] == 1

    frame = pd.read_csv(tmp_path / 'out' / 'bounds.csv')
    assert frame.shape[0] == 10 * 4 * 2
    nc = frame[frame['negative_control']].set_index(['contrast_id', 'r2'])
    wc = frame[~frame['negative_control']].set_index(['contrast_id', 'r2'])

    assert not nc.loc[('t_2', 0.2), 'feasible']
    assert nc.loc[('t_2', 0.5), 'feasible']
    assert nc.loc[('t_2', 0.5), 'half_width'] < wc.loc[('t_2', 0.5), 'half_width']
    # the control itself is pinned to a zero effect
    assert nc.loc[('t_1', 0.5), 'pate_lo'] == pytest.approx(0, abs=1e-6)
    assert nc.loc[('t_1', 0.5), 'pate_hi'] == pytest.approx(0, abs=1e-6)


def test_bounds_rerun_identical(tmp_path, sim_csv, nc_file):
    cfg = _bounds_cfg(tmp_path, sim_csv, nc_spec=nc_file, workers=3)
    files = cmd_bounds(cfg)
    before = [p.read_bytes() for p in files]
    cmd_bounds(cfg.copy(update={'workers': 1}))
    assert [p.read_bytes() for p in files[:2]] == before[:2]


def test_bounds_infeasible(tmp_path, large_csv, nc_file):
    with pytest.raises(InfeasibleSensitivityError):
        cmd_bounds(_bounds_cfg(tmp_path, large_csv, nc_spec=nc_file, r2_grid=[0.05, 0.1]))
    # results are written before the failure is reported
    frame = pd.read_csv(tmp_path / 'out' / 'bounds.csv')
    assert not frame[frame['negative_control']]['feasible'].any()


def test_bounds_custom_contrasts(tmp_path, sim_csv):
    path = write_json({'contrasts': [{'t1': [1] * 5 + [0] * 5, 't2': [0] * 10, 'name': 'block'}]},
                      tmp_path / 'c.json')
    cmd_bounds(_bounds_cfg(tmp_path, sim_csv, contrasts=path, r2_grid=[0.5]))
    frame = pd.read_csv(tmp_path / 'out' / 'bounds.csv')
    assert frame['contrast_id'].tolist() == ['block']
    assert frame['naive_effect'][0] == pytest.approx(5, abs=1.5)


def test_bounds_grid_checks(tmp_path, sim_csv):
    assert _bounds_cfg(tmp_path, sim_csv, r2_grid=[0.5, 0, 0.5]).r2_grid == [0, 0.5]
    with pytest.raises(ValueError):
        _bounds_cfg(tmp_path, sim_csv, r2_grid=[1.5])


def test_sample(tmp_path, sim_csv):
    files = cmd_sample(_sample_cfg(tmp_path, sim_csv))
    assert [p.name for p in files] == ['draws_r2_uniform.csv', 'summary_r2_uniform.json', 'loglik_r2_uniform.csv',
                                       'sample_metadata.json']

    draws = pd.read_csv(files[0])
    assert draws.shape[0] == 2 * 20
    assert draws['chain'].tolist() == [0] * 20 + [1] * 20
    assert draws['iter'].tolist() == list(range(20, 40)) * 2

    loglik = pd.read_csv(files[2])
    assert loglik.shape == (40, 2000 + 2)

    summary = read_json(files[1])
    assert summary['n_draws'] == 40
    assert summary['chains'] == 2

    meta = read_json(files[3])
    assert meta['seeds']['streams'] == [0, 1]
    assert len(meta['chains']) == 2


def test_sample_negative_control(tmp_path, sim_csv, nc_file):
    files = cmd_sample(_sample_cfg(tmp_path, sim_csv, regime='negative_control', nc_spec=nc_file))
    draws = pd.read_csv(files[0])
    assert (draws['beta_1'] == 0).all()


def test_sample_rejects_pair_controls(tmp_path, sim_csv):
    path = write_json([{'t1': [1, 1] + [0] * 8, 't2': [0] * 10}], tmp_path / 'pair.json')
    with pytest.raises(InvalidParameterError):
        cmd_sample(_sample_cfg(tmp_path, sim_csv, regime='NEGATIVE_CONTROL', nc_spec=path))


def test_sample_config_checks(tmp_path, sim_csv):
    with pytest.raises(ValueError):
        _sample_cfg(tmp_path, sim_csv, warmup=40)
    with pytest.raises(ValueError):
        _sample_cfg(tmp_path, sim_csv, regime='spike_slab')


def test_prop1(tmp_path):
    files = cmd_prop1(Prop1RunConfig(out_dir=tmp_path, m_values=[2, 3, 10], draws=5000, seed=4))
    frame = pd.read_csv(files[0])
    assert frame.shape == (15_000, 2)
    assert frame['m'].unique().tolist() == [2, 3, 10]

    tests = read_json(files[1])['tests']
    assert [t['m'] for t in tests] == [2, 3, 10]
    for t in tests:
        assert t['p_value'] > 1e-3
        assert frame[frame['m'] == t['m']]['bias'].abs().max() <= t['half_width'] * (1 + 1e-9)


def test_prop1_fitted(tmp_path, sim_csv):
    files = cmd_prop1(Prop1RunConfig(out_dir=tmp_path / 'out', m_values=[2], draws=2000, input=sim_csv,
                                     outcome_col='y'))
    tests = read_json(files[1])['tests']
    assert tests[0]['contrast_id'] == 't_1'
    assert tests[0]['p_value'] > 1e-3


def test_prop1_config_checks(tmp_path):
    with pytest.raises(ValueError):
        Prop1RunConfig(out_dir=tmp_path, m_values=[1])


def test_bounds_log_summary(tmp_path, sim_csv, caplog):
    caplog.set_level(logging.INFO, logger='ConfoundSens')
    cmd_bounds(_bounds_cfg(tmp_path, sim_csv))
    msgs = [r.getMessage() for r in caplog.records if r.name == 'ConfoundSens.Cmd']
    assert msgs[0] == 'Robustness of 10 contrast(s), r2_min=0:'
    assert len(msgs) == 11
    assert msgs[1].startswith('  t_1: robust up to r2=')
