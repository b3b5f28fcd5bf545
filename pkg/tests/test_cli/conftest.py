from pathlib import Path

import pytest

from ConfoundSens.cli import SimulateRunConfig, cmd_simulate, write_json


@pytest.fixture
def sim_csv(tmp_path) -> Path:
    cmd_simulate(SimulateRunConfig(out_dir=tmp_path / 'sim', n=2000, seed=7))
    return tmp_path / 'sim' / 'simulated.csv'


@pytest.fixture
def large_csv(tmp_path) -> Path:
    cmd_simulate(SimulateRunConfig(out_dir=tmp_path / 'large', n=20_000, seed=3))
    return tmp_path / 'large' / 'simulated.csv'


@pytest.fixture
def nc_file(tmp_path) -> Path:
    return write_json([{'treatment': 't_1', 'name': 'nc'}], tmp_path / 'nc.json')
