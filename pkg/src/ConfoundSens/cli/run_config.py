from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Extra, Field, validator

from ConfoundSens.core.const import PD_REL_TOL, PINV_RCOND, STAT_TOL
from ConfoundSens.core.linalg import Tolerances
from ConfoundSens.mcmc import RegimeKind
from ConfoundSens.sim import LoadingPattern, Variant


class RunConfig(BaseModel):
    """Parameters of one command, validated before anything is computed"""
    out_dir: Path
    seed: int = Field(0, ge=0, lt=2 ** 64)
    workers: int = Field(1, ge=1)

    class Config:
        extra = Extra.forbid
        allow_population_by_field_name = True


class DataRunConfig(RunConfig):
    input: Path
    outcome_col: Optional[str] = None
    standardize: bool = False


class SimulateRunConfig(RunConfig):
    n: int = Field(1000, ge=1)
    k: int = Field(10, ge=1)
    m: int = Field(2, ge=1)
    r2: float = Field(0.5, ge=0, lt=1)
    dgp: LoadingPattern = LoadingPattern.PAPER_S4
    variant: Variant = Variant.NULL_EFFECTS
    beta_true: Optional[List[float]] = None

    @validator('dgp')
    def _only_builtin_loadings(cls, v):
        # custom loadings are a library feature, there is no file format for B
        if v is not LoadingPattern.PAPER_S4:
            raise ValueError('the command line only supports the PAPER_S4 loading pattern')
        return v

    @validator('m')
    def _m_le_k(cls, v, values):
        if 'k' in values and v > values['k']:
            raise ValueError(f'm={v} exceeds k={values["k"]}')
        return v


class ScreeRunConfig(DataRunConfig):
    pass


class ModelRunConfig(DataRunConfig):
    """Commands that fit the factor model and check negative controls"""
    outcome_col: str
    m: int = Field(..., ge=1)
    nc_spec: Optional[Path] = None
    tol: float = Field(STAT_TOL, gt=0)
    pd_rel_tol: float = Field(PD_REL_TOL, gt=0, lt=1)
    pinv_rcond: float = Field(PINV_RCOND, gt=0, lt=1)

    def tolerances(self) -> Tolerances:
        return Tolerances(pd_rel_tol=self.pd_rel_tol, pinv_rcond=self.pinv_rcond, nc_tol=self.tol)


class BoundsRunConfig(ModelRunConfig):
    r2_grid: List[float] = Field(..., min_items=1)
    contrasts: Optional[Path] = None

    @validator('r2_grid', each_item=True)
    def _r2_in_unit_interval(cls, v):
        if not 0 <= v <= 1:
            raise ValueError(f'r2 must be in [0, 1], got {v}')
        return v

    @validator('r2_grid')
    def _sorted_grid(cls, v):
        return sorted(set(v))


class SampleRunConfig(ModelRunConfig):
    regime: RegimeKind
    iters: int = Field(..., ge=2)
    warmup: Optional[int] = Field(None, ge=0)
    chains: int = Field(..., ge=1)
    r2_upper: float = Field(..., ge=0, le=1)
    nonnull_fraction: float = Field(..., gt=0, lt=1)
    slab_scale: float = Field(..., gt=0)

    @validator('regime', pre=True)
    def _regime_by_name(cls, v):
        return RegimeKind.from_name(v) if isinstance(v, str) else v

    @validator('warmup')
    def _warmup_lt_iters(cls, v, values):
        if v is not None and 'iters' in values and v >= values['iters']:
            raise ValueError(f'warmup={v} must be smaller than iters={values["iters"]}')
        return v


class Prop1RunConfig(RunConfig):
    m_values: List[int] = Field([2, 3, 5, 10], min_items=1)
    k: int = Field(10, ge=2)
    r2: float = Field(0.5, gt=0, le=1)
    draws: int = Field(100_000, ge=2)
    input: Optional[Path] = None
    outcome_col: Optional[str] = None
    contrasts: Optional[Path] = None

    @validator('m_values', each_item=True)
    def _m_at_least_two(cls, v):
        if v < 2:
            raise ValueError(f'the bias law needs m >= 2, got {v}')
        return v
