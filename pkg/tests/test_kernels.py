import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from src.domain.errors import DomainError
from src.domain.value_objects.gram_matrix import GramMatrix
from src.domain.value_objects.kernel_spec import KernelSpec
from src.infrastructure.kernels import (
    basis_matrix,
    bessel_form,
    eigenvalue_constant,
    equivalent_bandwidth,
    fourier_basis,
    gram,
    kernel_eval,
    kernel_matrix,
    matern_correlation,
    matern_eigenvalue_constant,
    matern_eval,
    spectral_kernel_eval,
)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_matern_is_one_on_the_diagonal():
    assert matern_eval(0.3, 0.3, 1.2) == 1.0


def test_matern_half_is_exponential():
    assert matern_eval(0.0, 1.0, 0.5) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert bessel_form(np.array([1.0]), 0.5)[0] == pytest.approx(math.exp(-1.0), rel=1e-10)


def test_matern_three_halves_closed_form():
    r = 0.5
    expected = (1 + math.sqrt(3) * r) * math.exp(-math.sqrt(3) * r)
    assert matern_eval(0.0, r, 1.5) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("nu", [1.5, 2.5])
def test_closed_forms_agree_with_bessel_evaluation(nu):
    r = np.linspace(0.01, 1.0, 25)
    closed = np.array([matern_eval(0.0, value, nu) for value in r])
    np.testing.assert_allclose(closed, bessel_form(r, nu), rtol=1e-10)


@pytest.mark.parametrize("nu", [0.01, 6.0])
def test_matern_rejects_unsupported_smoothness(nu):
    with pytest.raises(DomainError):
        matern_eval(0.0, 0.5, nu)


@given(unit, unit, st.floats(min_value=0.05, max_value=5.0))
def test_matern_is_finite_symmetric_and_bounded(x, y, nu):
    value = matern_eval(x, y, nu)
    assert math.isfinite(value)
    assert 0.0 <= value <= 1.0 + 1e-9
    assert value == pytest.approx(matern_eval(y, x, nu), rel=1e-12)


@pytest.mark.parametrize("j, x, expected", [
    (2, 0.0, math.sqrt(2)),
    (1, 0.5, math.sqrt(2)),
    (3, 0.25, math.sqrt(2)),
])
def test_fourier_basis_values(j, x, expected):
    assert fourier_basis(j, x) == pytest.approx(expected, abs=1e-14)


def test_fourier_basis_rejects_index_zero():
    with pytest.raises(DomainError):
        fourier_basis(0, 0.5)


def test_period_one_basis_is_orthonormal_on_unit_interval():
    points = (np.arange(1000) + 0.5) / 1000
    phi = basis_matrix(points, 1, 10, period=1.0)
    np.testing.assert_allclose(phi.T @ phi / points.size, np.eye(10), atol=1e-10)


def test_spectral_kernel_two_term_sum():
    spec = KernelSpec.spectral(1.0, truncation=2)
    assert spectral_kernel_eval(spec, 0.0, 0.0) == pytest.approx(2.0)


def test_spectral_kernel_eval_requires_spectral_kind():
    with pytest.raises(DomainError):
        spectral_kernel_eval(KernelSpec.matern(0.5), 0.1, 0.2)


def test_spectral_kernel_symmetric_on_random_pairs(rng):
    spec = KernelSpec.spectral(1.5, truncation=200)
    x, y = rng.uniform(size=100), rng.uniform(size=100)
    np.testing.assert_allclose(kernel_matrix(x, y, spec), kernel_matrix(y, x, spec).T, atol=1e-12)
    assert np.all(np.diag(kernel_matrix(x, x, spec)) > 0)


@pytest.mark.parametrize("spec", [KernelSpec.matern(0.5), KernelSpec.matern(1.2),
                                  KernelSpec.spectral(2.0, truncation=400)])
def test_gram_is_symmetric_psd(spec, rng):
    points = rng.uniform(size=40)
    matrix = gram(points, spec)
    assert matrix.size == 40
    assert np.array_equal(matrix.entries, matrix.entries.T)
    assert matrix.is_psd()


def test_gram_rejects_points_outside_unit_interval():
    with pytest.raises(DomainError):
        gram([0.2, 1.5], KernelSpec.matern(0.5))


def test_gram_matrix_rejects_asymmetric_entries():
    with pytest.raises(DomainError):
        GramMatrix(entries=np.array([[1.0, 0.5], [0.2, 1.0]]), points=np.array([0.0, 1.0]))


def test_kernel_spec_validation():
    with pytest.raises(DomainError):
        KernelSpec.spectral(0.5)
    with pytest.raises(DomainError):
        KernelSpec.matern(0.0)
    assert KernelSpec.matern(0.1).smoothness_index == pytest.approx(0.6)


def test_kernel_eval_dispatches_on_kind():
    assert kernel_eval(KernelSpec.matern(0.7), 0.2, 0.65) == matern_eval(0.2, 0.65, 0.7)
    spec = KernelSpec.spectral(1.5, truncation=50)
    assert kernel_eval(spec, 0.1, 0.9) == spectral_kernel_eval(spec, 0.1, 0.9)


@pytest.mark.parametrize("nu", [0.1, 0.5, 1.2, 2.5, 5.0])
def test_matern_decreases_with_distance(nu):
    values = matern_correlation(np.linspace(0.0, 1.0, 101), nu)
    assert np.all(np.diff(values) < 0)


def test_fourier_basis_orthonormal_up_to_fifty_terms():
    points = np.linspace(0.0, 1.0, 10_001)
    phi = basis_matrix(points, 1, 50, period=1.0)
    inner = np.array([integrate.trapezoid(phi * phi[:, [j]], points, axis=0) for j in range(50)])
    np.testing.assert_allclose(inner, np.eye(50), atol=1e-10)


def test_exponential_kernel_eigenvalue_constant():
    assert matern_eigenvalue_constant(0.5) == pytest.approx(2.0 / math.pi ** 2, rel=1e-12)


@pytest.mark.parametrize("nu", [0.1, 0.5])
def test_eigenvalue_constant_matches_discretized_operator(nu):
    m = 2000
    points = (np.arange(m) + 0.5) / m
    mu = np.linalg.eigvalsh(kernel_matrix(points, points, KernelSpec.matern(nu)) / m)[::-1]
    j = np.arange(40, 61)
    ratio = mu[j - 1] * j ** (2.0 * nu + 1.0)
    assert np.median(ratio) == pytest.approx(matern_eigenvalue_constant(nu), rel=0.15)


def test_spectral_eigenvalue_constant_and_bandwidth():
    spec = KernelSpec.spectral(1.5, truncation=100)
    assert eigenvalue_constant(spec) == pytest.approx(8.0)
    assert equivalent_bandwidth(spec, 0.001) == pytest.approx(0.1)
    matern = KernelSpec.matern(0.1)
    lambda_ = 0.3 * eigenvalue_constant(matern)
    assert equivalent_bandwidth(matern, lambda_) == pytest.approx(2.0 * 0.3 ** (1.0 / 1.2))
    with pytest.raises(DomainError):
        equivalent_bandwidth(matern, 0.0)
