import numpy as np
import pytest

from source.analysis import log_grid, sweep, sweep_grid, markov_limit_study, fit_quadratic_coefficient
from source.analytic import dephasing_oracle
from source.decoherence_time import DEFAULT_THRESHOLD
from source.method_id import MethodID
from source.nmqsd import integrate_volterra
from source.oscillator_solution import OscillatorSolution
from source.physical_params import PhysicalParams
from source.pseudomode import build_pseudomode, adapt_truncation, evolve_with_diagnostics, simulate


# End-to-end checks at unit a, D, hbar over the deep-memory grid and the short-time window


@pytest.mark.parametrize('tau_c', [0.25, 1.0, 4.0])
def test_pseudomode_reproduces_exact_dephasing(tau_c):
    params = PhysicalParams(tau_c=tau_c)
    series = simulate(params, 5.0)
    assert series.max_abs_difference(dephasing_oracle(params, 5.0, series.dt)) <= 1e-4


@pytest.mark.parametrize('tau_c', [0.25, 1.0, 4.0])
def test_pseudomode_conservation(tau_c):
    config = adapt_truncation(build_pseudomode(PhysicalParams(tau_c=tau_c)), 5.0)
    _, report = evolve_with_diagnostics(config, 5.0, config.default_step())
    assert report.max_trace_error <= 1e-8
    assert report.max_hermiticity_deviation <= 1e-10
    assert report.min_eigenvalue >= -1e-8
    assert report.max_population_drift <= 1e-9


@pytest.mark.parametrize('tau_c', log_grid(10.0, 1000.0, 8))
def test_pseudomode_conservation_over_deep_memory_grid(tau_c):
    params = PhysicalParams(tau_c=tau_c)
    t_max, dt = sweep_grid(params, [MethodID.PSEUDOMODE])
    stop_below = DEFAULT_THRESHOLD / 2
    config = adapt_truncation(build_pseudomode(params), t_max, dt, stop_below)
    series, report = evolve_with_diagnostics(config, t_max, dt, stop_below)
    assert abs(series.values[-1]) < stop_below
    assert report.max_trace_error <= 1e-8
    assert report.max_hermiticity_deviation <= 1e-10
    assert report.min_eigenvalue >= -1e-8
    assert report.max_population_drift <= 1e-9


def test_square_root_scaling_over_deep_memory_grid():
    grid = log_grid(10.0, 1000.0, 8)
    result = sweep(PhysicalParams(), grid, ['eq16', 'nmqsd', 'pseudomode', 'oracle', 'formula'], jobs=4)
    for method in ['eq16', 'nmqsd', 'pseudomode', 'oracle']:
        assert 0.45 <= result.fits[method].exponent <= 0.55, f'{method}: {result.fits[method].summary()}'
        assert result.fits[method].residual < 0.1
    assert result.fits['formula'].exponent == pytest.approx(0.5)
    # the two damped-oscillator routes agree point by point
    np.testing.assert_allclose(result.tau_decs('nmqsd'), result.tau_decs('eq16'), rtol=1e-4)


def test_volterra_route_matches_closed_form():
    params = PhysicalParams()
    volterra = integrate_volterra(params, 10.0)
    closed_form = OscillatorSolution.from_params(params).evaluate(10.0, volterra.dt)
    assert volterra.max_abs_difference(closed_form) <= 1e-6


def test_short_time_curvatures():
    params = PhysicalParams()
    damped = fit_quadratic_coefficient(OscillatorSolution.from_params(params).evaluate(0.02, 0.001), 0.01)
    assert damped.coefficient == pytest.approx(1.0, rel=0.01)
    # exact dephasing onset carries twice the damped-oscillator curvature
    exact = fit_quadratic_coefficient(simulate(params, 0.01, 0.0005), 0.01)
    assert exact.coefficient == pytest.approx(2.0, rel=0.05)
    assert not exact.poor_fit


def test_markovian_limit_recovers_tegmark_scale():
    study = markov_limit_study(PhysicalParams(), 0.1, 4)
    assert study.converged()
    assert study.converged_ratio() == pytest.approx(0.5, abs=0.01)
