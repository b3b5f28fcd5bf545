from typing import Sequence, Tuple, Union

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class ConfoundSensError(Exception):
    exit_code: int = 1


class InvalidParameterError(ConfoundSensError, ValueError):
    exit_code = EXIT_CONFIG

    @classmethod
    def out_of_range(cls, name: str, value, lower=None, upper=None):
        if lower is not None and upper is not None:
            return cls(f'{name} must be in [{lower}, {upper}], got {value}')
        if lower is not None:
            return cls(f'{name} must be >= {lower}, got {value}')
        return cls(f'{name} must be <= {upper}, got {value}')


class DimensionMismatchError(ConfoundSensError, ValueError):
    exit_code = EXIT_CONFIG

    @classmethod
    def from_shapes(cls, what: str, expected: Union[int, Sequence[int]], got: Union[int, Tuple[int, ...]]):
        return cls(f'Dimension mismatch for {what}: expected {expected}, got {got}')


class NotPositiveDefiniteError(ConfoundSensError, ValueError):
    exit_code = EXIT_INFEASIBLE

    @classmethod
    def from_eigenvalues(cls, what: str, smallest: float, largest: float):
        return cls(f'{what} is not positive definite (smallest eigenvalue {smallest:g}, largest {largest:g})')


class DegenerateDataError(ConfoundSensError, ValueError):
    exit_code = EXIT_INFEASIBLE


class InfeasibleSensitivityError(ConfoundSensError, ValueError):
    exit_code = EXIT_INFEASIBLE

    def __init__(self, msg: str, r2_min: float = float('nan')):
        super().__init__(msg)
        self.r2_min: float = r2_min

    @classmethod
    def below_r2_min(cls, r2: float, r2_min: float):
        return cls(f'r2={r2:g} is below the smallest value compatible with the negative controls ({r2_min:g})',
                   r2_min=r2_min)


class ZeroContrastError(ConfoundSensError, ValueError):
    exit_code = EXIT_INFEASIBLE

    @classmethod
    def from_id(cls, contrast_id: str):
        return cls(f'Contrast "{contrast_id}" has no confounder mean difference, the width factor is undefined')


class InvalidConfigException(ConfoundSensError):
    exit_code = EXIT_CONFIG


class InputFileError(ConfoundSensError, OSError):
    exit_code = EXIT_IO

    @classmethod
    def from_path(cls, path, reason: str):
        return cls(f'Can not read "{path}": {reason}')
