import numpy as np
from scipy.integrate import dblquad
from .bath_kernel import BathKernel
from .physical_params import PhysicalParams
from .coherence_series import CoherenceSeries, time_grid


# Markovian (delta-correlated) bath: C(t) = exp(-a^2 D t / hbar^2)
def tegmark_decay(params: PhysicalParams, t_max: float, dt: float):
    times = time_grid(t_max, dt)
    values = np.exp(-params.coupling_scale() * params.D * times)
    return CoherenceSeries(dt, values, 'tegmark')


def tegmark_time(params: PhysicalParams):
    if params.D == 0:
        raise ValueError('No decoherence: noise strength D is zero.')
    return 1 / (params.coupling_scale() * params.D)


# Universal short-time law C(t) = 1 - Gamma t^2, clamped at zero outside its validity window
def quadratic_law(gamma: float, t_max: float, dt: float):
    if gamma < 0:
        raise ValueError(f'Quadratic rate must be non-negative (gamma: {gamma}).')
    times = time_grid(t_max, dt)
    unclamped = 1 - gamma * times ** 2
    label = 'quadratic[clamped]' if np.any(unclamped < 0) else 'quadratic'
    return CoherenceSeries(dt, np.maximum(unclamped, 0.0), label)


# Square-root scaling law sqrt(hbar^2 tau_c / (a^2 D)), prefactor as printed
def tau_dec_formula(params: PhysicalParams):
    if params.D == 0:
        raise ValueError('No decoherence: noise strength D is zero.')
    if params.is_markovian():
        raise ValueError('Decoherence-time scaling law needs a finite correlation time (tau_c > 0).')
    return float(np.sqrt(params.tau_c / (params.coupling_scale() * params.D)))


# Exact pure-dephasing exponent for the one-sided exponential kernel:
# (4 a^2 / hbar^2) int_0^t dt1 int_0^t1 dt2 (D / tau_c) exp(-(t1 - t2) / tau_c)
def dephasing_exponent(params: PhysicalParams, times):
    if params.is_markovian():
        raise ValueError('Dephasing oracle needs a finite correlation time (tau_c > 0).')
    scaled = np.asarray(times, dtype=float) / params.tau_c
    # u - (1 - exp(-u)) without cancellation at small u
    memory_integral = params.tau_c ** 2 * (scaled + np.expm1(-scaled))
    return 4 * params.coupling_scale() * (params.D / params.tau_c) * memory_integral


# Same exponent by direct numerical double integration of the kernel, for cross-validation
def dephasing_exponent_numeric(params: PhysicalParams, times, kernel: BathKernel = None):
    kernel = kernel or BathKernel.exponential_ou(params.D, params.tau_c)
    exponents = []
    for t in np.atleast_1d(times):
        if t == 0:
            exponents.append(0.0)
            continue
        integral, _ = dblquad(lambda t2, t1: kernel.evaluate(abs(t1 - t2)), 0, t, lambda t1: 0.0, lambda t1: t1, epsabs=1e-13, epsrel=1e-11)
        exponents.append(4 * params.coupling_scale() * integral)
    return np.array(exponents)


def dephasing_oracle(params: PhysicalParams, t_max: float, dt: float):
    times = time_grid(t_max, dt)
    values = np.exp(-dephasing_exponent(params, times))
    return CoherenceSeries(dt, values, 'oracle')
