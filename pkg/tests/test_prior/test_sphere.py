import numpy as np
import pytest
import scipy.stats

from ConfoundSens.core.errors import InvalidParameterError
from ConfoundSens.prior import sample_sphere


def test_unit_norm(rng):
    draws = sample_sphere(4, 1000, rng)
    assert draws.shape == (1000, 4)
    np.testing.assert_allclose(np.linalg.norm(draws, axis=1), 1, rtol=1e-12)
    assert sample_sphere(3, 0, rng).shape == (0, 3)


def test_signs_in_one_dimension(rng):
    n = 10_000
    draws = sample_sphere(1, n, rng)[:, 0]
    assert set(np.unique(draws)) == {-1.0, 1.0}
    assert scipy.stats.binomtest(int(np.sum(draws > 0)), n, 0.5).pvalue > 0.01


def test_coordinate_uniform_in_three_dimensions(rng):
    # a coordinate of a uniform point on the 2-sphere is uniform on [-1, 1]
    draws = sample_sphere(3, 100_000, rng)
    assert scipy.stats.kstest(draws[:, 0], 'uniform', args=(-1, 2)).pvalue > 0.01


@pytest.mark.parametrize('m, n', ((0, 5), (2, -1)))
def test_invalid(rng, m, n):
    with pytest.raises(InvalidParameterError):
        sample_sphere(m, n, rng)
