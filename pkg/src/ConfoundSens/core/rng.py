from typing import Optional

import numpy as np

from .const import RNG_ALGORITHM
from .errors import InvalidParameterError

_BIT_GENERATORS = {
    'PCG64': np.random.PCG64,
    'PCG64DXSM': np.random.PCG64DXSM,
    'Philox': np.random.Philox,
    'SFC64': np.random.SFC64,
    'MT19937': np.random.MT19937,
}


class RngStream:
    """Seeded random number stream. A stream has a single owner,
    parallel work gets independent streams through :meth:`spawn`.

    :ivar ~.seed: 64 bit seed of the stream
    :ivar ~.algorithm_id: name of the numpy bit generator
    :ivar ~.stream_index: index of this stream when it was split from a parent seed
    """

    def __init__(self, seed: int, algorithm_id: str = RNG_ALGORITHM, stream_index: Optional[int] = None):
        if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
            raise InvalidParameterError(f'Seed must be an unsigned 64 bit integer, got {seed!r}')
        if algorithm_id not in _BIT_GENERATORS:
            raise InvalidParameterError(
                f'Unknown rng algorithm "{algorithm_id}", available: {", ".join(_BIT_GENERATORS)}')

        self.seed: int = int(seed)
        self.algorithm_id: str = algorithm_id
        self.stream_index: Optional[int] = stream_index

        spawn_key = () if stream_index is None else (stream_index, )
        seq = np.random.SeedSequence(self.seed, spawn_key=spawn_key)
        self.generator: np.random.Generator = np.random.Generator(_BIT_GENERATORS[algorithm_id](seq))

    def spawn(self, stream_index: int) -> 'RngStream':
        """Create an independent stream from (seed, stream_index)"""
        if stream_index < 0:
            raise InvalidParameterError(f'Stream index must be >= 0, got {stream_index}')
        return RngStream(self.seed, self.algorithm_id, stream_index)

    def __repr__(self):
        idx = '' if self.stream_index is None else f', stream_index={self.stream_index}'
        return f'<{self.__class__.__name__} seed={self.seed}, algorithm_id={self.algorithm_id}{idx}>'
