import pytest

from ConfoundSens.core import errors


@pytest.mark.parametrize('cls, code', (
    (errors.InvalidParameterError, 2),
    (errors.DimensionMismatchError, 2),
    (errors.InvalidConfigException, 2),
    (errors.InfeasibleSensitivityError, 3),
    (errors.NotPositiveDefiniteError, 3),
    (errors.DegenerateDataError, 3),
    (errors.ZeroContrastError, 3),
    (errors.InputFileError, 4),
))
def test_exit_codes(cls, code):
    assert cls.exit_code == code
    assert issubclass(cls, errors.ConfoundSensError)


def test_value_error_compatible():
    with pytest.raises(ValueError):
        raise errors.InvalidParameterError.out_of_range('r2', 2, 0, 1)


def test_messages():
    assert str(errors.InvalidParameterError.out_of_range('r2', 2, 0, 1)) == 'r2 must be in [0, 1], got 2'
    assert str(errors.InvalidParameterError.out_of_range('n', 0, lower=1)) == 'n must be >= 1, got 0'
    assert 'expected 3, got 2' in str(errors.DimensionMismatchError.from_shapes('beta', 3, 2))


def test_infeasible_carries_r2_min():
    e = errors.InfeasibleSensitivityError.below_r2_min(0.1, 1 / 3)
    assert e.r2_min == pytest.approx(1 / 3)
    assert '0.1' in str(e)
    assert errors.InfeasibleSensitivityError('x').r2_min != errors.InfeasibleSensitivityError('x').r2_min  # nan
