import logging
import numpy as np
from dataclasses import dataclass, asdict
from typing import List
from concurrent.futures import ProcessPoolExecutor
from .errors import NumericalError
from .analytic import tau_dec_formula, tegmark_time
from .coherence_series import CoherenceSeries
from .decoherence_time import DecoherenceTime, DEFAULT_THRESHOLD, extract_tau_dec, validate_threshold
from .method_id import MethodID
from .oscillator_solution import OscillatorSolution
from .physical_params import PhysicalParams
from .pseudomode import DEFAULT_FOCK_CAP
from .sweep_result import PowerLawFit, SweepRow, SweepResult, LimitRow, LimitStudy
from .utils import LOGGER_NAME


HORIZON_FACTOR = 20
STEPS_PER_ESTIMATE = 200
LIMIT_STEPS_PER_ESTIMATE = 2000
MIN_SWEEP_POINTS = 4
QUADRATIC_MIN_SAMPLES = 10
QUADRATIC_MAX_DEVIATION = 0.02
QUADRATIC_POOR_FIT = 0.05


# Least-squares coefficient of 1 - |C| = coefficient * t^2 through the origin
@dataclass(frozen=True)
class QuadraticFit:
    coefficient: float
    relative_residual: float
    poor_fit: bool

    def to_dict(self):
        return asdict(self)


def fit_power_law(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError(f'Power-law fit needs at least two paired samples (x: {x.size}, y: {y.size}).')
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError('Power-law fit needs strictly positive samples.')
    log_x, log_y = np.log(x), np.log(y)
    exponent, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.sqrt(np.mean((exponent * log_x + intercept - log_y) ** 2)))
    return PowerLawFit(float(exponent), float(intercept), residual)


def log_grid(tau_c_min: float, tau_c_max: float, points: int):
    if not 0 < tau_c_min < tau_c_max:
        raise ValueError(f'Sweep bounds must satisfy 0 < tau_c_min < tau_c_max (got {tau_c_min}, {tau_c_max}).')
    if points < MIN_SWEEP_POINTS:
        raise ValueError(f'Sweep needs at least {MIN_SWEEP_POINTS} points (points: {points}).')
    return [float(tau_c) for tau_c in np.geomspace(tau_c_min, tau_c_max, points)]


# Horizon and step for one sweep point. The larger of the scaling-law estimate and the Tegmark time sets the
# scale so that points close to the Markovian limit are not truncated.
def sweep_grid(params: PhysicalParams, methods: List[MethodID]):
    estimate = max(tau_dec_formula(params), tegmark_time(params))
    dt = min([params.tau_c / STEPS_PER_ESTIMATE, estimate / STEPS_PER_ESTIMATE] + [method.step_guard(params) for method in methods])
    return HORIZON_FACTOR * estimate, dt


# Worker for one (tau_c, method) pair; module level so it can be shipped to a process pool
def sweep_point(params: PhysicalParams, method: MethodID, threshold: float, interpolate: bool, fock_cap: int):
    if method == MethodID.FORMULA:
        return DecoherenceTime(tau_dec_formula(params), method.value, False, threshold)
    t_max, dt = sweep_grid(params, [method])
    stop_below = threshold / 2 if method == MethodID.PSEUDOMODE else None
    try:
        series = method.generate(params, t_max, dt, fock_cap, stop_below)
        return extract_tau_dec(series, threshold, interpolate)
    except NumericalError as error:
        raise type(error)(f'Sweep point failed (tau_c: {params.tau_c}, method: {method.value}): {error}') from error


def sweep(params_base: PhysicalParams, tau_c_grid: List[float], methods: List, threshold: float = DEFAULT_THRESHOLD,
          interpolate: bool = True, jobs: int = 1, fock_cap: int = DEFAULT_FOCK_CAP):
    logger = logging.getLogger(LOGGER_NAME)
    validate_threshold(threshold)
    tau_c_grid = [float(tau_c) for tau_c in tau_c_grid]
    if len(tau_c_grid) < MIN_SWEEP_POINTS:
        raise ValueError(f'Sweep needs at least {MIN_SWEEP_POINTS} tau_c points (got {len(tau_c_grid)}).')
    if tau_c_grid[0] <= 0 or np.any(np.diff(tau_c_grid) <= 0):
        raise ValueError('Sweep tau_c grid must be positive and strictly increasing.')
    methods = [method if isinstance(method, MethodID) else MethodID.from_tag(method) for method in methods]
    if not methods:
        raise ValueError('Sweep needs at least one method.')
    tags = [method.value for method in methods]
    if len(set(tags)) != len(tags):
        raise ValueError(f'Sweep methods must be distinct (methods: {", ".join(tags)}).')

    work = [(params_base.with_tau_c(tau_c), method) for tau_c in tau_c_grid for method in methods]
    logger.info(f'Sweep of {len(tau_c_grid)} tau_c points for methods {", ".join(tags)} on {jobs} worker(s)')
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(sweep_point, params, method, threshold, interpolate, fock_cap) for params, method in work]
            # Results are collected in submission order regardless of completion order
            times = [future.result() for future in futures]
    else:
        times = [sweep_point(params, method, threshold, interpolate, fock_cap) for params, method in work]

    rows = []
    for index, tau_c in enumerate(tau_c_grid):
        point_times = {method.value: time for method, time in zip(methods, times[index * len(methods):(index + 1) * len(methods)])}
        logger.info(f'tau_c {tau_c}: ' + ', '.join(f'{tag} {time.value:.6g}' for tag, time in point_times.items()))
        rows.append(SweepRow(tau_c, point_times))
    result = SweepResult(rows, tags)
    for tag in tags:
        result.fits[tag] = fit_power_law(result.tau_cs(), result.tau_decs(tag))
        logger.info(f'Power-law fit for {tag}: {result.fits[tag].summary()}')
    return result


# Damped-oscillator decoherence time on tau_c = tau_c_start * 10^-j, j = 0..decades, compared with the Tegmark time.
# Non-convergence is flagged in the study, not raised.
def markov_limit_study(params_base: PhysicalParams, tau_c_start: float = 0.1, decades: int = 4,
                       threshold: float = DEFAULT_THRESHOLD):
    logger = logging.getLogger(LOGGER_NAME)
    if decades < 2:
        raise ValueError(f'Markov-limit study needs at least two decades (decades: {decades}).')
    if not tau_c_start > 0:
        raise ValueError(f'Markov-limit study needs a positive starting tau_c (tau_c_start: {tau_c_start}).')
    rows = []
    for decade in range(decades + 1):
        params = params_base.with_tau_c(tau_c_start * 10.0 ** -decade)
        estimate = max(tau_dec_formula(params), tegmark_time(params))
        dt = estimate / LIMIT_STEPS_PER_ESTIMATE
        solution = OscillatorSolution.from_params(params)
        logger.info(f'Markov-limit point tau_c {params.tau_c}: {solution.to_dict()}')
        series = solution.evaluate(HORIZON_FACTOR * estimate, dt)
        tau_dec = extract_tau_dec(series, threshold, True).value
        rows.append(LimitRow(params.tau_c, tau_dec, tegmark_time(params)))
    study = LimitStudy(rows)
    if study.converged():
        logger.info(f'Markov-limit ratio converged to {study.converged_ratio():.6f}')
    else:
        logger.warning(f'Markov-limit ratio did not converge over {decades} decades (last ratio {study.converged_ratio():.6f})')
    return study


def fit_quadratic_coefficient(series: CoherenceSeries, window: float):
    sample_count = int(np.floor(window / series.dt + 1e-9)) + 1
    if sample_count < QUADRATIC_MIN_SAMPLES or sample_count > len(series):
        raise ValueError(f'Insufficient samples in quadratic window (window: {window}, dt: {series.dt}, samples: {min(sample_count, len(series))}).')
    times = series.times()[:sample_count]
    deviations = 1 - series.magnitudes()[:sample_count]
    if np.max(np.abs(deviations)) >= QUADRATIC_MAX_DEVIATION:
        raise ValueError(f'Quadratic window leaves the short-time regime (max |1 - C|: {np.max(np.abs(deviations))}).')
    squares = times ** 2
    coefficient = float(np.dot(squares, deviations) / np.dot(squares, squares))
    residual_norm = np.linalg.norm(deviations - coefficient * squares)
    deviation_norm = np.linalg.norm(deviations)
    relative_residual = float(residual_norm / deviation_norm) if deviation_norm > 0 else 0.0
    fit = QuadraticFit(coefficient, relative_residual, relative_residual > QUADRATIC_POOR_FIT)
    logger = logging.getLogger(LOGGER_NAME)
    logger.info(f'Quadratic fit over window {window} ({series.label}): {fit.to_dict()}')
    if fit.poor_fit:
        logger.warning(f'Quadratic law fits {series.label} poorly (relative residual {relative_residual:.3g})')
    return fit
