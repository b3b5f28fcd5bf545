import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ConfoundSens.core.const import PINV_RCOND
from ConfoundSens.core.errors import DimensionMismatchError, InvalidParameterError
from ConfoundSens.core.linalg import as_vector, complement_basis, frozen, numeric_rank, pinv
from ConfoundSens.model import ConfounderPosterior, Contrast, mu_delta
from .contrasts import ContrastSet

log = logging.getLogger('ConfoundSens.Bounds')


def scaled_mu_delta(cp: ConfounderPosterior, c: Contrast) -> np.ndarray:
    """``Sigma^-1/2 mu_delta`` of a contrast"""
    return cp.cov_inv_sqrt @ mu_delta(cp, c)


@dataclass(frozen=True, eq=False)
class NCGeometry:
    """Constraint geometry of the negative controls

    :ivar ~.M: m x c matrix of scaled confounder mean differences
    :ivar ~.M_pinv: c x m Moore-Penrose pseudoinverse of ``M``
    :ivar ~.P_perp: projector onto the orthogonal complement of col(M)
    :ivar ~.complement: orthonormal basis (columns) of that complement
    :ivar ~.rank: numeric rank of ``M``
    """
    M: np.ndarray
    M_pinv: np.ndarray
    P_perp: np.ndarray
    complement: np.ndarray = field(repr=False)
    rank: int

    @property
    def m(self) -> int:
        return self.M.shape[0]

    @property
    def c(self) -> int:
        return self.M.shape[1]

    @classmethod
    def from_matrix(cls, M, rcond: float = PINV_RCOND) -> 'NCGeometry':
        M = np.asarray(M, dtype=float)
        if M.ndim != 2:
            raise DimensionMismatchError(f'M must be a m x c matrix, got shape {M.shape}')

        M_pinv = pinv(M, rcond)
        P_perp = np.eye(M.shape[0]) - M @ M_pinv
        P_perp = 0.5 * (P_perp + P_perp.T)
        return cls(frozen(M), frozen(M_pinv), frozen(P_perp), frozen(complement_basis(M, rcond)),
                   numeric_rank(M, rcond))

    @classmethod
    def empty(cls, m: int) -> 'NCGeometry':
        """Geometry without negative controls"""
        return cls.from_matrix(np.zeros((m, 0)))


def nc_geometry(cp: ConfounderPosterior, cs: ContrastSet, rcond: float = PINV_RCOND) -> NCGeometry:
    if cs.k != cp.k:
        raise DimensionMismatchError.from_shapes('contrast set', cp.k, cs.k)

    ncs = cs.negative_controls
    if not ncs:
        log.debug('No negative controls in the contrast set, the geometry is unconstrained')
        return NCGeometry.empty(cp.m)

    M = np.column_stack([scaled_mu_delta(cp, c) for c in ncs])
    geo = NCGeometry.from_matrix(M, rcond)
    log.debug(f'Negative control geometry: m={geo.m}, c={geo.c}, rank={geo.rank}')
    return geo


def as_nc_effects(geo: NCGeometry, tau_check_C) -> np.ndarray:
    if geo.c == 0:
        tau = np.asarray(tau_check_C, dtype=float).reshape(-1)
        if tau.size:
            raise DimensionMismatchError.from_shapes('naive negative control effects', 0, tau.size)
        return tau
    return as_vector(tau_check_C, 'naive negative control effects', geo.c)


def project_row_space(geo: NCGeometry, tau_check_C) -> np.ndarray:
    """Closest vector to the naive negative control effects which the geometry can explain"""
    tau = as_nc_effects(geo, tau_check_C)
    return tau @ geo.M_pinv @ geo.M


def nc_compatible(geo: NCGeometry, tau_check_C, tol: float) -> Tuple[bool, float]:
    """Check that the naive negative control effects lie in the row space of ``M``

    :return: compatible flag and norm of the projection residual
    """
    if not tol > 0:
        raise InvalidParameterError.out_of_range('tol', tol, lower='0 (exclusive)')
    tau = as_nc_effects(geo, tau_check_C)
    residual = float(np.linalg.norm(tau - project_row_space(geo, tau)))
    return residual <= tol * (1 + float(np.linalg.norm(tau))), residual


def r2_min(geo: NCGeometry, tau_check_C, sigma2_y_t: float) -> float:
    """Smallest confounding strength compatible with the negative controls.
    Values above one are returned as they are, they mean that no feasible confounding exists."""
    if not sigma2_y_t > 0:
        raise InvalidParameterError.out_of_range('sigma2_y_t', sigma2_y_t, lower='0 (exclusive)')
    tau = as_nc_effects(geo, tau_check_C)
    if geo.c == 0:
        return 0.0
    return float(np.sum((tau @ geo.M_pinv) ** 2) / sigma2_y_t)
