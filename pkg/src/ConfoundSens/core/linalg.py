import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from .const import PD_REL_TOL, PINV_RCOND, STAT_TOL
from .errors import DimensionMismatchError, InvalidParameterError, NotPositiveDefiniteError

log = logging.getLogger('ConfoundSens.Linalg')


@dataclass(frozen=True)
class Tolerances:
    """Numerical cutoffs used by a computation

    :ivar ~.pd_rel_tol: smallest eigenvalue relative to the largest for a positive definite matrix
    :ivar ~.pinv_rcond: relative cutoff of singular values for the pseudoinverse and the numeric rank
    :ivar ~.nc_tol: relative negative control compatibility tolerance
    """
    pd_rel_tol: float = PD_REL_TOL
    pinv_rcond: float = PINV_RCOND
    nc_tol: float = STAT_TOL

    def __post_init__(self):
        for name in ('pd_rel_tol', 'pinv_rcond'):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise InvalidParameterError.out_of_range(name, value, '0 (exclusive)', '1 (exclusive)')
        if not self.nc_tol > 0:
            raise InvalidParameterError.out_of_range('nc_tol', self.nc_tol, lower='0 (exclusive)')


DEFAULT_TOLERANCES = Tolerances()


def as_vector(value, what: str, size: int = None) -> np.ndarray:
    vec = np.asarray(value, dtype=float)
    if vec.ndim == 0:
        vec = vec.reshape(1)
    if vec.ndim != 1:
        raise DimensionMismatchError(f'{what} must be a vector, got shape {vec.shape}')
    if size is not None and vec.shape[0] != size:
        raise DimensionMismatchError.from_shapes(what, size, vec.shape[0])
    return vec


def frozen(arr: np.ndarray) -> np.ndarray:
    """Return a read only copy of the array"""
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


def sym_eig(mat: np.ndarray, what: str = 'matrix') -> Tuple[np.ndarray, np.ndarray]:
    """Eigen decomposition of a symmetric matrix. The input is symmetrized before decomposition.

    :return: ascending eigenvalues, eigenvectors as columns
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f'{what} must be square, got shape {mat.shape}')
    return scipy.linalg.eigh(0.5 * (mat + mat.T))


def check_pd(mat: np.ndarray, what: str = 'matrix', rel_tol: float = PD_REL_TOL) -> Tuple[np.ndarray, np.ndarray]:
    """Raise if the smallest eigenvalue is not above ``rel_tol`` times the largest one.

    :return: eigenvalues and eigenvectors of the matrix
    """
    vals, vecs = sym_eig(mat, what)
    if vals[-1] <= 0 or vals[0] <= rel_tol * vals[-1]:
        raise NotPositiveDefiniteError.from_eigenvalues(what, vals[0], vals[-1])
    return vals, vecs


def sym_power(mat: np.ndarray, power: float, what: str = 'matrix', rel_tol: float = PD_REL_TOL) -> np.ndarray:
    vals, vecs = check_pd(mat, what, rel_tol)
    out = (vecs * vals ** power) @ vecs.T
    return 0.5 * (out + out.T)


def sym_sqrt(mat: np.ndarray, what: str = 'matrix') -> np.ndarray:
    return sym_power(mat, 0.5, what)


def sym_inv_sqrt(mat: np.ndarray, what: str = 'matrix') -> np.ndarray:
    return sym_power(mat, -0.5, what)


def sym_inv(mat: np.ndarray, what: str = 'matrix', rel_tol: float = PD_REL_TOL) -> np.ndarray:
    return sym_power(mat, -1.0, what, rel_tol)


def pinv(mat: np.ndarray, rcond: float = PINV_RCOND) -> np.ndarray:
    """Moore-Penrose pseudoinverse. Singular values below ``rcond`` times the largest are treated as zero."""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    rows, cols = mat.shape
    if rows == 0 or cols == 0:
        return np.zeros((cols, rows))

    u, s, vt = scipy.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] <= 0:
        return np.zeros((cols, rows))

    keep = s > rcond * s[0]
    return (vt[keep].T / s[keep]) @ u[:, keep].T


def numeric_rank(mat: np.ndarray, rcond: float = PINV_RCOND) -> int:
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    s = scipy.linalg.svdvals(mat)
    if s[0] <= 0:
        return 0
    return int(np.sum(s > rcond * s[0]))


def complement_basis(mat: np.ndarray, rcond: float = PINV_RCOND) -> np.ndarray:
    """Orthonormal basis (as columns) of the orthogonal complement of the column space of ``mat``"""
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    rows = mat.shape[0]
    if mat.shape[1] == 0:
        return np.eye(rows)

    u, s, _ = scipy.linalg.svd(mat, full_matrices=True)
    rank = 0 if s.size == 0 or s[0] <= 0 else int(np.sum(s > rcond * s[0]))
    return u[:, rank:]
