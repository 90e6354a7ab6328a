import math

import numpy as np
import pytest
from numpy.polynomial import chebyshev as C
from numpy.testing import assert_allclose

from app.models.optimization_models import ChebSeries
from app.services.spectral import (
    cgl_nodes,
    cheb_coeff_c,
    cheb_derivative_eval,
    cheb_eval,
    derivative_at_zero,
    derivative_coeffs,
    discrete_transform,
    series_eval,
    theta_weights,
)


def basis(k):
    return C.Chebyshev.basis(k)


def test_cgl_nodes_n4():
    nodes = cgl_nodes(4).nodes
    assert_allclose(nodes, [1.0, math.sqrt(0.5), 0.0, -math.sqrt(0.5), -1.0], atol=1e-16)
    assert nodes[2] == 0.0


@pytest.mark.parametrize('n', [1, 2, 5, 7, 12, 33])
def test_cgl_nodes_symmetric_and_descending(n):
    nodes = cgl_nodes(n).nodes
    assert len(cgl_nodes(n)) == n + 1
    assert nodes[0] == 1.0 and nodes[-1] == -1.0
    assert np.all(np.diff(nodes) < 0)
    for k in range(n + 1):
        assert nodes[k] + nodes[n - k] == 0.0


def test_cgl_nodes_rejects_zero_order():
    with pytest.raises(ValueError):
        cgl_nodes(0)


def test_theta_weights():
    assert_allclose(theta_weights(4).values, [0.5, 1, 1, 1, 0.5])


def test_nodes_are_read_only():
    with pytest.raises(ValueError):
        cgl_nodes(4).nodes[0] = 2.0


@pytest.mark.parametrize('k', range(11))
def test_cheb_eval_matches_numpy(k):
    for x in np.linspace(-1, 1, 17):
        assert cheb_eval(k, x) == pytest.approx(basis(k)(x), abs=1e-13)


def test_cheb_eval_outside_domain():
    with pytest.raises(ValueError):
        cheb_eval(3, 1.5)


def test_power_coefficients():
    # T4 = 8x^4 − 8x^2 + 1, T5 = 16x^5 − 20x^3 + 5x
    assert cheb_coeff_c(4) == (8.0, -8.0, 1.0)
    assert cheb_coeff_c(5) == (16.0, -20.0, 5.0)
    assert cheb_coeff_c(0) == (1.0,)


@pytest.mark.parametrize('k', range(11))
@pytest.mark.parametrize('m', range(5))
def test_derivative_matches_numpy(k, m):
    reference = basis(k).deriv(m) if m else basis(k)
    for x in (-1.0, -0.83, -0.5, -0.1, 0.0, 0.3, 0.7071067811865476, 1.0):
        expected = reference(x)
        actual = cheb_derivative_eval(k, m, x)
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize('k', range(2, 11))
@pytest.mark.parametrize('m', range(1, 5))
def test_derivative_at_zero_closed_form(k, m):
    expected = basis(k).deriv(m)(0.0)
    assert derivative_at_zero(k, m) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_derivative_below_order_is_zero():
    assert cheb_derivative_eval(2, 3, 0.4) == 0.0
    assert cheb_derivative_eval(3, 3, 0.4) == 24.0


def test_discrete_transform_recovers_coefficients():
    coeffs = [1.0, 2.0, 3.0, 4.0, 5.0]
    samples = C.chebval(cgl_nodes(4).nodes, coeffs)
    assert_allclose(discrete_transform(samples).coeffs, coeffs, atol=1e-13)
    assert_allclose(discrete_transform(samples, specialized=False).coeffs, coeffs, atol=1e-13)


def test_discrete_transform_general_n():
    coeffs = [0.5, -1.0, 0.25, 2.0, 0.0, -0.75, 1.5]
    samples = C.chebval(cgl_nodes(6).nodes, coeffs)
    assert_allclose(discrete_transform(samples).coeffs, coeffs, atol=1e-13)


def test_discrete_transform_keeps_interval():
    series = discrete_transform([1, 2, 3, 4, 5], interval=(2.0, 7.0))
    assert series.interval == (2.0, 7.0)
    with pytest.raises(ValueError):
        discrete_transform([1.0])


def test_derivative_coeffs_matches_chebder():
    coeffs = [0.3, -1.2, 2.5, 0.7, -0.4]
    result = derivative_coeffs(ChebSeries(coeffs=tuple(coeffs)))
    expected = list(C.chebder(coeffs)) + [0.0]
    assert_allclose(result.coeffs, expected, atol=1e-14)


def test_derivative_coeffs_of_t4():
    result = derivative_coeffs(ChebSeries(coeffs=(0, 0, 0, 0, 1)))
    assert_allclose(result.coeffs, [0, 8, 0, 8, 0])


def test_derivative_coeffs_wrong_length():
    with pytest.raises(ValueError):
        derivative_coeffs(ChebSeries(coeffs=(1, 2, 3)))


def test_series_eval_clenshaw():
    coeffs = (0.3, -1.2, 2.5, 0.7, -0.4, 0.05)
    series = ChebSeries(coeffs=coeffs)
    for x in np.linspace(-1, 1, 11):
        assert series_eval(series, x) == pytest.approx(C.chebval(x, coeffs), abs=1e-14)


def test_chebseries_rejects_empty_interval():
    with pytest.raises(ValueError):
        ChebSeries(coeffs=(1.0,), interval=(1.0, 1.0))
