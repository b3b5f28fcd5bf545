import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import ConfoundSens
from .errors import ConfoundSensError

log = logging.getLogger('ConfoundSens.Worker')

T = TypeVar('T')
R = TypeVar('R')


class WorkerJob:
    """Runs a function on a worker thread, logging unexpected exceptions with a formatted traceback"""

    def __init__(self, func: Callable, name: str = None, logger: logging.Logger = None):
        assert callable(func)
        self._func = func
        self.name = func.__name__ if not name else name
        self.log = logger if logger is not None else log

    def __call__(self, *args, **kwargs):
        __start = time.time()
        try:
            return self._func(*args, **kwargs)
        except ConfoundSensError:
            # expected errors are handled by the caller
            raise
        except Exception as e:
            lines = ConfoundSens.core.wrapper.format_exception(e)
            self.log.error(f'Error in {self.name}: {e}')
            for line in lines:
                self.log.error(line)
            raise
        finally:
            self.log.debug(f'{self.name} took {time.time() - __start:.2f}s')


def run_parallel(func: Callable[[T], R], items: Iterable[T], workers: int = 1, name: str = None) -> List[R]:
    """Apply ``func`` to every item. Results keep the order of ``items`` regardless of the worker count."""
    job = WorkerJob(func, name)
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [job(item) for item in items]

    with ThreadPoolExecutor(min(workers, len(items)), 'ConfoundSens_') as pool:
        return list(pool.map(job, items))
