import logging
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from ConfoundSens.core.const import PINV_RCOND
from ConfoundSens.core.errors import ZeroContrastError
from ConfoundSens.core.logger import SensWarning
from ConfoundSens.model import ConfounderPosterior, Contrast, ObservedOutcomeParams, naive_effect
from .contrasts import ContrastSet
from .geometry import NCGeometry, nc_compatible, nc_geometry, project_row_space, r2_min, scaled_mu_delta
from .intervals import R2_SLACK, BiasInterval, nc_interval, robustness_value, width_reduction, \
    worst_case_interval

log = logging.getLogger('ConfoundSens.Bounds')


class BoundsRecord(BaseModel):
    contrast_id: str
    naive_effect: float
    r2: float
    center: Optional[float]
    half_width: Optional[float]
    pate_lo: Optional[float]
    pate_hi: Optional[float]
    r2_min: float
    width_factor: Optional[float]
    compatible: bool
    residual_norm: float
    negative_control: bool
    feasible: bool


class RobustnessSummary(BaseModel):
    contrast_id: str
    robust_r2_worst_case: Optional[float]
    robust_r2_negative_control: Optional[float]
    point_identified: bool


class NCDiagnostics(BaseModel):
    compatible: bool
    residual_norm: float
    r2_min: float
    rank: int
    n_controls: int
    projected: bool


class BoundsReport(BaseModel):
    records: List[BoundsRecord]
    robustness: List[RobustnessSummary]
    diagnostics: NCDiagnostics


def _record(cid: str, r2: float, interval: Optional[BiasInterval], naive: float, r2_min_val: float,
            factor: Optional[float], compatible: bool, residual: float, nc: bool) -> BoundsRecord:
    return BoundsRecord(
        contrast_id=cid, naive_effect=naive, r2=r2,
        center=None if interval is None else interval.center,
        half_width=None if interval is None else interval.half_width,
        pate_lo=None if interval is None else interval.pate_lo,
        pate_hi=None if interval is None else interval.pate_hi,
        r2_min=r2_min_val, width_factor=factor, compatible=compatible, residual_norm=residual,
        negative_control=nc, feasible=interval is not None,
    )


class BoundsEvaluator:
    """Evaluates the worst case and negative control intervals of contrasts over a grid of r2 values.

    Incompatible negative controls are replaced by their row space projection and flagged.
    Singular values of the constraint matrix below ``rcond`` times the largest one count as zero.
    """

    def __init__(self, cp: ConfounderPosterior, observed: ObservedOutcomeParams, cs: ContrastSet, tol: float,
                 rcond: float = PINV_RCOND):
        self.cp = cp
        self.observed = observed
        self.cs = cs
        self.geo: NCGeometry = nc_geometry(cp, cs, rcond)

        tau = cs.naive_nc_effects(observed.beta_check) if self.geo.c else np.zeros(0)
        self.compatible, self.residual_norm = nc_compatible(self.geo, tau, tol) if self.geo.c else (True, 0.0)
        self.tau: np.ndarray = tau if self.compatible else project_row_space(self.geo, tau)
        self.r2_min: float = r2_min(self.geo, self.tau, observed.sigma2_y_t)

        if not self.compatible:
            w = SensWarning(log)
            w.add('Naive negative control effects are not in the row space of the constraint matrix')
            w.add(f'  residual norm: {self.residual_norm:.6g} (tolerance {tol:g})')
            w.add('  continuing with the row space projection')
            w.dump()
        if self.r2_min > 1:
            log.warning(f'R2_min = {self.r2_min:.4g} > 1: no confounding strength is compatible with the controls')

    def diagnostics(self) -> NCDiagnostics:
        return NCDiagnostics(compatible=self.compatible, residual_norm=self.residual_norm, r2_min=self.r2_min,
                             rank=self.geo.rank, n_controls=self.geo.c, projected=not self.compatible)

    def point_identified(self, c: Contrast) -> bool:
        v = scaled_mu_delta(self.cp, c)
        return bool(np.linalg.norm(self.geo.P_perp @ v) <= 1e-10 * max(1.0, float(np.linalg.norm(v))))

    def evaluate(self, c: Contrast, r2_grid: Sequence[float]) -> List[BoundsRecord]:
        naive = naive_effect(self.observed.beta_check, c)
        s2 = self.observed.sigma2_y_t
        # the width factor is undefined for a contrast that does not move the confounder mean
        shift = float(np.linalg.norm(scaled_mu_delta(self.cp, c)))
        moves_confounders = shift > 1e-10 * max(1.0, float(np.linalg.norm(c.delta)))
        out = []
        for r2 in r2_grid:
            r2 = float(r2)
            worst = worst_case_interval(self.cp, c, s2, r2, naive)
            out.append(_record(c.name, r2, worst, naive, 0.0, 1.0 if r2 > 0 and moves_confounders else None,
                               True, 0.0, False))

            if not self.geo.c:
                continue

            if r2 < self.r2_min - R2_SLACK:
                out.append(_record(c.name, r2, None, naive, self.r2_min, None, self.compatible,
                                   self.residual_norm, True))
                continue

            interval = nc_interval(self.geo, self.cp, c, self.tau, s2, r2, naive, self.r2_min)
            try:
                factor = width_reduction(self.geo, self.cp, c, r2, self.r2_min) if r2 > 0 else None
            except ZeroContrastError:
                factor = None
            out.append(_record(c.name, r2, interval, naive, self.r2_min, factor, self.compatible,
                               self.residual_norm, True))
        return out

    def robustness(self, c: Contrast, records: Sequence[BoundsRecord]) -> RobustnessSummary:
        def _summary(nc: bool) -> Optional[float]:
            sel = [r for r in records if r.negative_control == nc]
            intervals = [None if not r.feasible else BiasInterval(r.center, r.half_width, r.naive_effect)
                         for r in sel]
            return robustness_value([r.r2 for r in sel], intervals)

        return RobustnessSummary(
            contrast_id=c.name, robust_r2_worst_case=_summary(False),
            robust_r2_negative_control=_summary(True) if self.geo.c else None,
            point_identified=bool(self.geo.c) and self.point_identified(c),
        )
