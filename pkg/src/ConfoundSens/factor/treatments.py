from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ConfoundSens.core.errors import DegenerateDataError, DimensionMismatchError
from ConfoundSens.core.linalg import frozen


@dataclass(frozen=True, eq=False)
class TreatmentMatrix:
    """Observed treatments, one row per unit

    :ivar ~.data: n x k matrix
    :ivar ~.column_names: optional treatment labels
    """
    data: np.ndarray
    column_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim == 1:
            data = data.reshape(-1, 1)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionMismatchError(f'Treatments must be a non empty n x k matrix, got shape {data.shape}')
        if not np.all(np.isfinite(data)):
            raise DegenerateDataError('Treatments contain missing or non-finite values')

        names = self.column_names
        if names is not None:
            names = tuple(str(k) for k in names)
            if len(names) != data.shape[1]:
                raise DimensionMismatchError.from_shapes('column_names', data.shape[1], len(names))

        object.__setattr__(self, 'data', frozen(data))
        object.__setattr__(self, 'column_names', names)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, columns: Optional[Sequence[str]] = None) -> 'TreatmentMatrix':
        if columns is not None:
            frame = frame.loc[:, list(columns)]
        return cls(frame.to_numpy(dtype=float), tuple(str(c) for c in frame.columns))

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def k(self) -> int:
        return self.data.shape[1]

    @property
    def names(self) -> Tuple[str, ...]:
        if self.column_names is not None:
            return self.column_names
        return tuple(f't_{i + 1}' for i in range(self.k))

    def centered(self, standardize: bool = False) -> np.ndarray:
        """Mean centered columns, optionally scaled to unit variance"""
        out = self.data - self.data.mean(axis=0)
        if standardize:
            sd = out.std(axis=0)
            if np.any(sd <= 0):
                raise DegenerateDataError('Can not standardize a constant treatment column')
            out = out / sd
        return out

    def covariance(self, standardize: bool = False) -> np.ndarray:
        """Maximum likelihood (1/n) covariance of the centered columns"""
        if self.n < 2:
            raise DegenerateDataError(f'At least two rows are required for a covariance, got {self.n}')
        centered = self.centered(standardize)
        cov = centered.T @ centered / self.n
        return 0.5 * (cov + cov.T)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.data, columns=list(self.names))
