from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.model import Contrast


@dataclass(frozen=True, eq=False)
class ContrastSet:
    """Contrasts of interest, a subset of them flagged as negative controls (assumed to have no effect)"""
    contrasts: Tuple[Contrast, ...]
    is_negative_control: Tuple[bool, ...]

    def __post_init__(self):
        contrasts = tuple(self.contrasts)
        flags = tuple(bool(k) for k in self.is_negative_control)
        if not contrasts:
            raise InvalidParameterError('A contrast set needs at least one contrast')
        if len(flags) != len(contrasts):
            raise DimensionMismatchError.from_shapes('negative control flags', len(contrasts), len(flags))

        ks = {c.k for c in contrasts}
        if len(ks) != 1:
            raise DimensionMismatchError(f'All contrasts must have the same dimension, got {sorted(ks)}')

        object.__setattr__(self, 'contrasts', contrasts)
        object.__setattr__(self, 'is_negative_control', flags)

    @classmethod
    def build(cls, contrasts: Sequence[Contrast], negative_controls: Optional[Sequence[Contrast]] = None):
        contrasts = list(contrasts)
        negative_controls = list(negative_controls) if negative_controls is not None else []
        return cls(tuple(contrasts + negative_controls),
                   tuple([False] * len(contrasts) + [True] * len(negative_controls)))

    @property
    def k(self) -> int:
        return self.contrasts[0].k

    @property
    def negative_controls(self) -> Tuple[Contrast, ...]:
        return tuple(c for c, nc in zip(self.contrasts, self.is_negative_control) if nc)

    @property
    def targets(self) -> Tuple[Contrast, ...]:
        return tuple(c for c, nc in zip(self.contrasts, self.is_negative_control) if not nc)

    def naive_nc_effects(self, beta_check) -> np.ndarray:
        """Naive effects of the negative control contrasts"""
        beta_check = np.asarray(beta_check, dtype=float)
        if beta_check.shape[-1] != self.k:
            raise DimensionMismatchError.from_shapes('beta_check', self.k, beta_check.shape[-1])
        deltas = np.array([c.delta for c in self.negative_controls]).reshape(-1, self.k)
        return beta_check @ deltas.T


def coordinate_contrast(k: int, treatment: int, delta: float = 1.0, name: Optional[str] = None) -> Contrast:
    """The estimand where only ``treatment`` (zero based) takes the value ``delta``, compared to all zeros"""
    return Contrast.coordinate(k, treatment, delta, name)
