from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from ConfoundSens.core.const import NONNULL_FRACTION, SLAB_SCALE
from ConfoundSens.core.errors import InvalidParameterError


class RegimeKind(str, Enum):
    FLAT_GAMMA = 'FLAT_GAMMA'
    R2_UNIFORM = 'R2_UNIFORM'
    NEGATIVE_CONTROL = 'NEGATIVE_CONTROL'
    HORSESHOE = 'HORSESHOE'
    HORSESHOE_NC = 'HORSESHOE_NC'

    @classmethod
    def from_name(cls, name: str) -> 'RegimeKind':
        try:
            return cls(name.upper().replace('-', '_'))
        except ValueError:
            raise InvalidParameterError(f'Unknown regime "{name}", available: {", ".join(k.value for k in cls)}') \
                from None


@dataclass(frozen=True)
class PriorRegime:
    """Prior on the outcome model

    :ivar ~.kind: prior family
    :ivar ~.r2_upper: upper bound of the uniform prior on r2, 0 conditions on r2 = 0
    :ivar ~.nc_indices: zero based treatment indices of the negative controls (or the shrunk coefficients)
    :ivar ~.horseshoe_scale: global scale of the horseshoe, derived from ``nonnull_fraction`` if not set
    :ivar ~.horseshoe_slab: slab scale of the regularized horseshoe
    :ivar ~.nonnull_fraction: expected fraction of non-zero effects
    """
    kind: RegimeKind
    r2_upper: float = 1.0
    nc_indices: Tuple[int, ...] = ()
    horseshoe_scale: Optional[float] = None
    horseshoe_slab: float = SLAB_SCALE
    nonnull_fraction: float = NONNULL_FRACTION

    def __post_init__(self):
        object.__setattr__(self, 'kind', RegimeKind(self.kind))
        if not 0 <= self.r2_upper <= 1:
            raise InvalidParameterError.out_of_range('r2_upper', self.r2_upper, 0, 1)

        idx = tuple(int(k) for k in self.nc_indices)
        if len(set(idx)) != len(idx) or any(k < 0 for k in idx):
            raise InvalidParameterError(f'nc_indices must be unique non negative indices, got {idx}')
        object.__setattr__(self, 'nc_indices', idx)

        if self.kind in (RegimeKind.NEGATIVE_CONTROL, RegimeKind.HORSESHOE_NC) and not idx:
            raise InvalidParameterError(f'Regime {self.kind.value} requires nc_indices')
        if self.horseshoe_scale is not None and not self.horseshoe_scale > 0:
            raise InvalidParameterError.out_of_range('horseshoe_scale', self.horseshoe_scale, lower='0 (exclusive)')
        if not self.horseshoe_slab > 0:
            raise InvalidParameterError.out_of_range('horseshoe_slab', self.horseshoe_slab, lower='0 (exclusive)')
        if not 0 < self.nonnull_fraction < 1:
            raise InvalidParameterError.out_of_range('nonnull_fraction', self.nonnull_fraction, 0, 1)

    def check_indices(self, k: int):
        bad = [i for i in self.nc_indices if i >= k]
        if bad:
            raise InvalidParameterError(f'nc_indices {bad} out of range for k={k}')
