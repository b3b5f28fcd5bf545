from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ConfoundSens.core.errors import DegenerateDataError, DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, frozen
from ConfoundSens.factor import TreatmentMatrix


@dataclass(frozen=True, eq=False)
class Dataset:
    """Treatments and outcome of n units. Regressions run on mean centered columns, the intercept is implicit."""
    treatments: TreatmentMatrix
    outcome: np.ndarray

    def __post_init__(self):
        y = as_vector(self.outcome, 'outcome', self.treatments.n)
        if not np.all(np.isfinite(y)):
            raise DegenerateDataError('Outcome contains missing or non-finite values')
        object.__setattr__(self, 'outcome', frozen(y))

    @classmethod
    def from_arrays(cls, treatments, outcome, column_names: Optional[Sequence[str]] = None) -> 'Dataset':
        return cls(TreatmentMatrix(treatments, None if column_names is None else tuple(column_names)), outcome)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, outcome_col: str,
                   treatment_cols: Optional[Sequence[str]] = None) -> 'Dataset':
        if outcome_col not in frame.columns:
            raise InvalidParameterError(f'Outcome column "{outcome_col}" not found, available: '
                                        f'{", ".join(map(str, frame.columns))}')
        if treatment_cols is None:
            treatment_cols = [c for c in frame.columns if c != outcome_col]
        if not treatment_cols:
            raise DimensionMismatchError('No treatment columns found')
        return cls(TreatmentMatrix.from_frame(frame, treatment_cols), frame[outcome_col].to_numpy(dtype=float))

    @property
    def n(self) -> int:
        return self.treatments.n

    @property
    def k(self) -> int:
        return self.treatments.k

    def centered(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.treatments.centered(), self.outcome - self.outcome.mean()
