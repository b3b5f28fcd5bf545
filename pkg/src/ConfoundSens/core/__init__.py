from . import const
from . import errors
from . import wrapper
from . import logger
from . import linalg

from .rng import RngStream
from .workers import run_parallel, WorkerJob
