import numpy as np

from ConfoundSens.core.errors import InvalidParameterError
from ConfoundSens.core.rng import RngStream


def sample_sphere(m: int, n: int, rng: RngStream) -> np.ndarray:
    """Uniform draws on the unit (m-1)-sphere, one per row (normalized standard normal vectors)"""
    if m < 1:
        raise InvalidParameterError.out_of_range('m', m, lower=1)
    if n < 0:
        raise InvalidParameterError.out_of_range('n', n, lower=0)

    draws = rng.generator.standard_normal((n, m))
    norms = np.linalg.norm(draws, axis=1)

    # a zero vector has probability zero, but redraw it anyway
    while np.any(norms == 0):
        idx = np.flatnonzero(norms == 0)
        draws[idx] = rng.generator.standard_normal((idx.size, m))
        norms = np.linalg.norm(draws, axis=1)

    return draws / norms[:, None]
