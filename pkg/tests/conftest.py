import logging

import numpy as np
import pytest

from ConfoundSens.core.rng import RngStream
from ConfoundSens.sim import DGPConfig, Variant, generate, ground_truth


@pytest.fixture(autouse=True, scope='function')
def restore_logging():
    # the command line tests load a logging configuration which must not leak into other tests
    logger = logging.getLogger('ConfoundSens')
    state = logger.handlers[:], logger.level, logger.propagate
    yield
    for handler in logger.handlers:
        if handler not in state[0]:
            handler.close()
    logger.handlers[:], logger.level, logger.propagate = state
    for obj in logging.root.manager.loggerDict.values():
        if isinstance(obj, logging.Logger):
            obj.disabled = False


@pytest.fixture
def gen() -> np.random.Generator:
    return np.random.default_rng(42)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(1234)


@pytest.fixture
def block_cfg() -> DGPConfig:
    return DGPConfig(n=1000, k=10, m=2, r2_target=0.5, variant=Variant.NULL_EFFECTS, seed=7)


@pytest.fixture
def block_truth(block_cfg):
    return ground_truth(block_cfg)


@pytest.fixture
def block_data(block_cfg):
    return generate(block_cfg)
