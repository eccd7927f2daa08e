import logging
import numpy as np
import pytest

from source.analysis import (
    fit_power_law, log_grid, sweep, sweep_grid, markov_limit_study, fit_quadratic_coefficient,
)
from source.analytic import tegmark_decay
from source.errors import HorizonExceededError
from source.method_id import MethodID
from source.oscillator_solution import OscillatorSolution
from source.physical_params import PhysicalParams
from source.sweep_result import SweepResult, SweepRow
from source.utils import LOGGER_NAME


def test_fit_power_law_exact():
    x = np.array([1.0, 2.0, 5.0, 10.0])
    fit = fit_power_law(x, 3 * x ** 0.5)
    assert fit.exponent == pytest.approx(0.5)
    assert fit.intercept == pytest.approx(np.log(3))
    assert fit.prefactor() == pytest.approx(3.0)
    assert fit.residual == pytest.approx(0.0, abs=1e-12)


def test_fit_power_law_rejects_bad_samples():
    with pytest.raises(ValueError):
        fit_power_law([1.0], [1.0])
    with pytest.raises(ValueError):
        fit_power_law([1.0, 2.0], [1.0, -1.0])


def test_log_grid():
    assert log_grid(10.0, 1000.0, 5) == pytest.approx([10.0, 10 ** 1.5, 100.0, 10 ** 2.5, 1000.0])
    assert log_grid(1.0, 64.0, 4) == pytest.approx([1.0, 4.0, 16.0, 64.0])
    with pytest.raises(ValueError):
        log_grid(1.0, 64.0, 3)
    with pytest.raises(ValueError):
        log_grid(64.0, 1.0, 4)


def test_sweep_grid_covers_markovian_and_memory_scales():
    t_max, dt = sweep_grid(PhysicalParams(tau_c=0.01), [MethodID.EQ16])
    assert t_max == pytest.approx(20.0)
    assert dt == pytest.approx(0.01 / 200)
    t_max, dt = sweep_grid(PhysicalParams(tau_c=100.0), [MethodID.PSEUDOMODE])
    assert t_max == pytest.approx(200.0)
    # coupling time hbar / (a g) = 10 is below tau_c, so the default pseudomode step is 10 / 50 / 4
    assert dt == pytest.approx(10.0 / 200)


def test_formula_sweep_is_exact_square_root():
    result = sweep(PhysicalParams(), [1.0, 4.0, 16.0, 64.0], ['formula'], jobs=1)
    np.testing.assert_allclose(result.csv_rows(), [[1.0, 1.0], [4.0, 2.0], [16.0, 4.0], [64.0, 8.0]])
    assert result.exponent == pytest.approx(0.5, abs=1e-12)
    assert result.residual == pytest.approx(0.0, abs=1e-12)
    assert result.csv_header() == ['tau_c', 'formula_tau_dec']


def test_damped_oscillator_sweep_exponent():
    result = sweep(PhysicalParams(), [1.0, 4.0, 16.0, 64.0], [MethodID.EQ16], jobs=1)
    assert 0.4 <= result.exponent <= 0.55
    assert result.residual >= 0
    assert result.csv_comments()[0].startswith('method=eq16 exponent=')


def test_parallel_sweep_matches_sequential():
    grid = [1.0, 2.0, 4.0, 8.0]
    sequential = sweep(PhysicalParams(), grid, ['eq16', 'formula'], jobs=1)
    parallel = sweep(PhysicalParams(), grid, ['eq16', 'formula'], jobs=2)
    assert parallel.csv_rows() == sequential.csv_rows()
    assert parallel.csv_comments() == sequential.csv_comments()


@pytest.mark.parametrize('grid, methods', [
    ([1.0, 2.0, 4.0], ['eq16']),
    ([1.0, 4.0, 2.0, 8.0], ['eq16']),
    ([0.0, 1.0, 2.0, 3.0], ['eq16']),
    ([1.0, 2.0, 4.0, 8.0], []),
    ([1.0, 2.0, 4.0, 8.0], ['eq16', 'eq16']),
])
def test_sweep_argument_errors(grid, methods):
    with pytest.raises(ValueError):
        sweep(PhysicalParams(), grid, methods, jobs=1)


def test_unknown_method_suggests_closest_tag():
    with pytest.raises(ValueError, match='did you mean pseudomode'):
        sweep(PhysicalParams(), [1.0, 2.0, 4.0, 8.0], ['pseudomod'], jobs=1)


def test_extraction_failure_names_the_point():
    with pytest.raises(HorizonExceededError, match=r'tau_c: 0.01, method: eq16'):
        sweep(PhysicalParams(), [0.01, 0.02, 0.04, 0.08], ['eq16'], threshold=1e-300, jobs=1)


def test_sweep_result_requires_increasing_tau_c():
    with pytest.raises(ValueError):
        SweepResult([SweepRow(2.0, {}), SweepRow(1.0, {})], ['eq16'])


def test_markov_limit_study_defaults():
    study = markov_limit_study(PhysicalParams(), 0.1, 4)
    assert [row.tau_c for row in study.rows] == pytest.approx([0.1, 0.01, 1e-3, 1e-4, 1e-5])
    assert [row.tau_T for row in study.rows] == pytest.approx([1.0] * 5)
    assert study.rows[0].ratio == pytest.approx(0.522, abs=2e-3)
    assert study.converged()
    assert study.converged_ratio() == pytest.approx(0.5, abs=0.01)
    assert study.relative_changes()[-1] < 0.01
    assert study.is_monotone()
    assert study.csv_comments()[0].startswith('converged_ratio=')


def test_markov_limit_study_needs_two_decades():
    with pytest.raises(ValueError):
        markov_limit_study(PhysicalParams(), 0.1, 1)


def test_quadratic_coefficient_of_damped_oscillator():
    params = PhysicalParams()
    series = OscillatorSolution.from_params(params).evaluate(0.05, 0.001)
    fit = fit_quadratic_coefficient(series, 0.01)
    assert fit.coefficient == pytest.approx(1.0, rel=0.01)
    assert not fit.poor_fit


def test_quadratic_fit_flags_exponential_onset(caplog):
    caplog.set_level(logging.INFO, logger=LOGGER_NAME)
    fit = fit_quadratic_coefficient(tegmark_decay(PhysicalParams(), 0.05, 0.001), 0.01)
    assert fit.poor_fit
    assert fit.relative_residual == pytest.approx(0.25, abs=0.02)
    assert "'poor_fit': True" in caplog.records[0].getMessage()
    assert caplog.records[-1].levelno == logging.WARNING


def test_quadratic_window_errors():
    series = OscillatorSolution.from_params(PhysicalParams()).evaluate(1.0, 0.001)
    with pytest.raises(ValueError, match='Insufficient samples'):
        fit_quadratic_coefficient(series, 0.005)
    with pytest.raises(ValueError):
        fit_quadratic_coefficient(series, 0.5)
