import math

import numpy as np
import pytest
from scipy import integrate, special

from src.domain.errors import ConfigError, DomainError, NumericalError, ReplicateError
from src.domain.events.simulation_events import ExperimentCompleted, ReplicateCompleted, ReplicateFailed
from src.domain.settings import ExperimentSettings, SimConfig
from src.domain.value_objects.function_coeffs import SmoothnessClass
from src.domain.value_objects.kernel_spec import KernelSpec
from src.infrastructure.kernels import fourier_basis
from src.infrastructure.spectral import MAX_TRUNCATION
from src.infrastructure.simulation import harness
from src.infrastructure.simulation.diagnostics import (
    TrendRow,
    equivalence_experiment,
    strictly_decreasing,
    sup_law_experiment,
    trend_summary,
)
from src.infrastructure.simulation.harness import (
    CoverageSimulation,
    posterior_noise_variance,
    resolve_lambda,
    resolve_workers,
    run_replicates,
)
from src.infrastructure.simulation.rates_experiment import fit_slope, noiseless_bandwidth, rate_experiment
from src.infrastructure.simulation.seeding import Stream, derived_rng
from src.infrastructure.simulation.truth import (
    generate_data,
    true_function,
    truncation_error_bound,
    truth_coefficients,
)


def small_config(**overrides):
    values = dict(n=30, kernel=KernelSpec.matern(1.2), levels=(0.8, 0.9), replicates=4, grid_size=20,
                  draws=100, truth_terms=100, base_seed=1, theory=False)
    values.update(overrides)
    return SimConfig(**values)


# -- truth and data -----------------------------------------------------------

def test_truth_at_zero_matches_exact_sum():
    expected = math.fsum(m ** -1.7 * math.sin(m) for m in range(1, 1001))
    assert true_function(0.0, terms=1000, cache=False) == pytest.approx(expected, abs=1e-10)


def test_truth_bounded_by_zeta():
    values = true_function(np.linspace(0.0, 1.0, 101))
    assert np.max(np.abs(values)) <= special.zeta(1.7)


def test_truth_truncation_error():
    grid = np.linspace(0.0, 1.0, 20)
    difference = np.abs(true_function(grid, 100_000, cache=False) - true_function(grid, 200_000, cache=False))
    assert truncation_error_bound(100_000) == pytest.approx(4.5e-4, rel=0.05)
    assert np.max(difference) <= 5e-4


def test_cached_truth_is_not_shared_mutable_state():
    grid = np.linspace(0.0, 1.0, 11)
    first = true_function(grid, terms=500)
    first[0] = 99.0
    np.testing.assert_array_equal(true_function(grid, terms=500), true_function(grid, terms=500, cache=False))
    assert isinstance(true_function(0.5, terms=500), float)


def test_truth_domain():
    with pytest.raises(DomainError):
        true_function(1.5)
    with pytest.raises(DomainError):
        true_function(0.5, terms=0)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_truth_coefficients_match_quadrature(j):
    coeffs = truth_coefficients(4, period=1.0, terms=50)
    numeric, _ = integrate.quad(lambda x: true_function(x, 50, cache=False) * fourier_basis(j, x, 1.0),
                                0.0, 1.0, limit=400, epsabs=1e-12)
    assert coeffs.coeffs[j - 1] == pytest.approx(numeric, abs=1e-8)


def test_generate_data_reproducible():
    first, second = generate_data(40, 0.1, seed=3, terms=100), generate_data(40, 0.1, seed=3, terms=100)
    np.testing.assert_array_equal(first.X, second.X)
    np.testing.assert_array_equal(first.Y, second.Y)


def test_noiseless_data_lie_on_truth():
    data = generate_data(25, 0.0, seed=4, terms=100)
    np.testing.assert_array_equal(data.Y, true_function(data.X, 100, cache=False))


def test_noise_level():
    data = generate_data(20_000, 0.5, seed=5, terms=100)
    residuals = data.Y - true_function(data.X, 100, cache=False)
    assert np.var(residuals) == pytest.approx(0.25, rel=0.05)


@pytest.mark.parametrize("n, sigma", [(0, 0.1), (10, -0.1)])
def test_generate_data_validation(n, sigma):
    with pytest.raises(DomainError):
        generate_data(n, sigma, seed=0, terms=10)


def test_derived_streams():
    same = derived_rng(9, Stream.DATA, 3).standard_normal(5)
    np.testing.assert_array_equal(same, derived_rng(9, Stream.DATA, 3).standard_normal(5))
    assert not np.array_equal(same, derived_rng(9, Stream.POSTERIOR, 3).standard_normal(5))
    assert not np.array_equal(same, derived_rng(9, Stream.DATA, 4).standard_normal(5))


# -- harness ------------------------------------------------------------------

def test_noise_variance_and_workers():
    assert posterior_noise_variance(0.2) == pytest.approx(0.04)
    assert posterior_noise_variance(0.0) == harness.FALLBACK_NOISE_VARIANCE
    assert resolve_workers(0) >= 1
    assert resolve_workers(3) == 3


def test_lambda_rules():
    kappa = 2.0 * special.gamma(1.7) * 2.4 ** 1.2 / (special.gamma(1.2) * math.sqrt(math.pi)) * math.pi ** -2.4
    rate = 100 ** (-3.4 / 4.4)
    assert resolve_lambda(small_config(n=100)) == pytest.approx(1.5 * kappa * rate)
    assert resolve_lambda(small_config(n=100, lambda_scale=3.0)) == pytest.approx(3.0 * kappa * rate)
    assert resolve_lambda(small_config(n=100, lambda_rule="rate")) == pytest.approx(rate)
    assert resolve_lambda(small_config(lambda_rule="explicit", lambda_value=0.02)) == 0.02
    h = (1.0 * 100 / (0.01 * math.log(100))) ** (-1.0 / 4.4)
    assert resolve_lambda(small_config(n=100, lambda_rule="class", sigma=0.1)) == pytest.approx(h ** 3.4)
    with pytest.raises(DomainError):
        resolve_lambda(small_config(lambda_rule="oracle"))


def test_sim_config_validation():
    with pytest.raises(ConfigError):
        small_config(levels=())
    with pytest.raises(ConfigError):
        small_config(levels=(1.2,))


def test_coverage_report_shape():
    events = []
    report = run_replicates(small_config(), workers=1, listener=events.append)
    assert report.replicates == 4
    assert report.nu == 1.2
    assert set(report.simultaneous) == {0.8, 0.9}
    assert report.pointwise[0.9].shape == (20,)
    assert all(0.0 <= p <= 1.0 for p in report.simultaneous.values())
    assert report.mean_radius[0.9] >= report.mean_radius[0.8]
    assert sum(isinstance(e, ReplicateCompleted) for e in events) == 4
    assert isinstance(events[-1], ExperimentCompleted)


def test_results_independent_of_worker_count():
    serial = run_replicates(small_config(), workers=1)
    threaded = run_replicates(small_config(), workers=3)
    assert serial.simultaneous == threaded.simultaneous
    assert serial.mean_radius == threaded.mean_radius
    for level in serial.levels:
        np.testing.assert_array_equal(serial.pointwise[level], threaded.pointwise[level])


def test_noiseless_undersmoothed_run_covers_pointwise():
    config = small_config(n=200, kernel=KernelSpec.matern(0.1), sigma=0.0, replicates=1, grid_size=50,
                          truth_terms=1000)
    report = run_replicates(config)
    assert np.mean(report.pointwise[0.9]) >= 0.95
    assert report.mean_half_length[0.9] > 0


def test_failed_replicate_is_reported(monkeypatch):
    def broken(*args, **kwargs):
        raise NumericalError("singular")
    monkeypatch.setattr(harness, "fit", broken)
    events = []
    with pytest.raises(ReplicateError) as excinfo:
        CoverageSimulation(small_config(), listener=events.append).run_replicate(2)
    assert excinfo.value.replicate_index == 2
    assert isinstance(events[0], ReplicateFailed)


def test_theory_predictions():
    simulation = CoverageSimulation(small_config(n=50, theory=True, theory_draws=1000))
    theory = simulation.theory()
    assert theory["c_ir"] > 1.0
    level = theory["levels"]["0.9"]
    assert 0.9 < level["asymptotic_pointwise"] < level["asymptotic_pointwise_linear"] <= 1.0
    assert 0.0 <= level["band_coverage_limit"] <= 1.0
    assert 0.0 <= level["predicted_pointwise_min"] <= level["predicted_pointwise_mean"] <= 1.0
    assert level["implied_radius"] == pytest.approx(level["population_band_quantile"] / math.sqrt(50 * theory["h"]))


def test_theory_bandwidth_follows_lambda_for_rough_prior():
    config = small_config(n=200, kernel=KernelSpec.matern(0.1), levels=(0.9,), theory=True, theory_draws=1000)
    theory = CoverageSimulation(config).theory()
    assert theory["h"] == pytest.approx(2.0 * 1.5 ** (1.0 / 1.2) * 200 ** (-1.0 / 2.2))
    assert theory["truncation"] == MAX_TRUNCATION
    assert theory["tail_corrected"]
    assert theory["c_ir"] > 1.0


# -- rates --------------------------------------------------------------------

def test_fit_slope_on_exact_power_law():
    ns = [100, 200, 400, 800]
    slope, intercept, stderr, ci = fit_slope(ns, [3.0 * n ** -0.4 for n in ns])
    assert slope == pytest.approx(-0.4)
    assert intercept == pytest.approx(math.log(3.0))
    assert ci[0] <= slope <= ci[1]


def test_rate_experiment_needs_four_sizes():
    with pytest.raises(DomainError):
        rate_experiment([100, 200, 400], 1.2, SmoothnessClass.HOLDER, seeds=1)
    with pytest.raises(DomainError):
        rate_experiment([50, 100, 200, 400], 1.2, SmoothnessClass.HOLDER, seeds=1, sigma=0.0)


def test_noiseless_rate_is_nonincreasing():
    result = rate_experiment([50, 100, 200, 400], 1.2, SmoothnessClass.HOLDER, seeds=1, sigma=0.0,
                             bandwidth_rule=noiseless_bandwidth(1.2))
    assert result.slope <= 0.0
    assert [row.n for row in result.rows] == [50, 100, 200, 400]
    assert result.target_slope == pytest.approx(-1.2 / 3.4)
    assert all(row.bias_supnorm >= 0 for row in result.rows)


# -- diagnostics --------------------------------------------------------------

def test_strictly_decreasing():
    rows = [TrendRow(n=n, h=0.1, values=v) for n, v in [(10, [3.0]), (20, [2.0, 2.0]), (40, [1.0])]]
    assert strictly_decreasing(rows)
    assert not strictly_decreasing(rows[::-1])
    assert trend_summary(rows) == {"medians": {"10": 3.0, "20": 2.0, "40": 1.0}, "strictly_decreasing": True}


def test_equivalence_experiment_small():
    rows = equivalence_experiment([40, 80], alpha=2.0, seeds=2, grid_size=10)
    assert [row.n for row in rows] == [40, 80]
    assert all(len(row.values) == 2 and row.median >= 0 for row in rows)
    assert rows[1].h < rows[0].h


def test_sup_law_experiment_small():
    rows = sup_law_experiment([40], alpha=2.0, seeds=1, grid_size=10, draws=200)
    assert 0.0 <= rows[0].median <= 1.0
    assert rows[0].population_quantile > 0
    assert rows[0].scaled_radius > 0


# -- long acceptance runs -----------------------------------------------------

TABLE_ONE = {
    0.1: {200: (0.977, 0.993), 500: (0.995, 0.999), 2000: (0.998, 0.999)},
    0.15: {200: (0.875, 0.939), 500: (0.926, 0.953), 2000: (0.978, 0.993)},
}


def table_one_run(nu, n, replicates):
    settings = ExperimentSettings()
    settings.credible.levels = [0.8, 0.9]
    settings.simulation.replicates = replicates
    settings.coverage.theory = False
    return run_replicates(settings.sim_config(n=n, nu=nu), workers=0)


@pytest.mark.slow
@pytest.mark.parametrize("n", [200, 500])
@pytest.mark.parametrize("nu", [0.1, 0.15])
def test_table_one_undersmoothed_cells(nu, n):
    report = table_one_run(nu, n, 1000)
    for level, expected in zip((0.8, 0.9), TABLE_ONE[nu][n]):
        assert report.simultaneous[level] == pytest.approx(expected, abs=0.03)


@pytest.mark.slow
@pytest.mark.parametrize("nu", [0.1, 0.15])
def test_table_one_large_sample_cells(nu):
    report = table_one_run(nu, 2000, 200)
    for level, expected in zip((0.8, 0.9), TABLE_ONE[nu][2000]):
        assert report.simultaneous[level] == pytest.approx(expected, abs=0.05)


@pytest.mark.slow
def test_undersmoothed_coverage_grows_with_n():
    reports = [table_one_run(0.15, n, 200) for n in (200, 500, 2000)]
    for level in (0.8, 0.9):
        for smaller, larger in zip(reports, reports[1:]):
            slack = 2.0 * max(smaller.simultaneous_se(level), larger.simultaneous_se(level))
            assert larger.simultaneous[level] >= smaller.simultaneous[level] - slack


@pytest.mark.slow
@pytest.mark.parametrize("n", [200, 500, 2000])
def test_table_one_oversmoothed_collapse(n):
    report = table_one_run(1.2, n, 200)
    assert all(value <= 0.01 for value in report.simultaneous.values())


@pytest.mark.slow
def test_holder_rate_slope():
    result = rate_experiment([100, 200, 400, 800, 1600], 1.2, SmoothnessClass.HOLDER, seeds=20)
    assert result.slope == pytest.approx(-1.2 / 3.4, abs=0.12)


@pytest.mark.slow
def test_equivalent_kernel_error_shrinks():
    assert strictly_decreasing(equivalence_experiment([100, 400, 1600], alpha=2.0, seeds=10))


@pytest.mark.slow
def test_sup_law_distance_shrinks():
    assert strictly_decreasing(sup_law_experiment([100, 400, 1600], alpha=2.0, seeds=5))
