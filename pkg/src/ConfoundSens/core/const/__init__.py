from . import json
from .const import PD_REL_TOL, PINV_RCOND, STAT_TOL, SLAB_SCALE, NONNULL_FRACTION, WARMUP_FRACTION, RNG_ALGORITHM
from .yml import yml, yml_safe
