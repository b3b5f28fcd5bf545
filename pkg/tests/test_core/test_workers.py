import logging

import pytest

from ConfoundSens.core.errors import InvalidParameterError
from ConfoundSens.core.workers import WorkerJob, run_parallel


@pytest.mark.parametrize('workers', (1, 4))
def test_order(workers):
    assert run_parallel(lambda x: x * x, range(20), workers) == [x * x for x in range(20)]


def test_unexpected_error_logged(caplog):
    def func(_):
        1 / 0

    with pytest.raises(ZeroDivisionError):
        WorkerJob(func, 'div')(1)
    assert any('Error in div' in r.getMessage() for r in caplog.records if r.levelno == logging.ERROR)


def test_expected_error_not_logged(caplog):
    def func(_):
        raise InvalidParameterError('bad')

    with pytest.raises(InvalidParameterError):
        run_parallel(func, [1, 2], 2)
    assert not [r for r in caplog.records if r.levelno >= logging.ERROR]
