import numpy as np
from dataclasses import dataclass
from .errors import StabilityError
from .physical_params import PhysicalParams
from .coherence_series import CoherenceSeries, time_grid
from .utils import rk4_step


# Closure O(t, s) = amplitude [1 - exp(-(t - s) / tau_c)] replacing the functional derivative
# for exponential kernels, with amplitude = 2 a^2 D / hbar^2.
# Note: the stated initial value O(s, s) = amplitude is inconsistent with this solution, which vanishes at t = s.
@dataclass(frozen=True)
class ClosureFunction:
    amplitude: float
    tau_c: float

    @staticmethod
    def from_params(params: PhysicalParams):
        if params.is_markovian():
            raise ValueError('Closure function needs a finite correlation time (tau_c > 0).')
        return ClosureFunction(2 * params.coupling_scale() * params.D, params.tau_c)

    def value(self, t: float, s: float):
        if t < s:
            raise ValueError(f'Closure function is defined for t >= s (t: {t}, s: {s}).')
        return self.amplitude * -np.expm1(-(t - s) / self.tau_c)

    # |dO/dt + O / tau_c - amplitude / tau_c| with the analytic derivative
    def ode_residual(self, t: float, s: float):
        derivative = (self.amplitude / self.tau_c) * np.exp(-(t - s) / self.tau_c)
        return abs(derivative + self.value(t, s) / self.tau_c - self.amplitude / self.tau_c)


# Coherence C and memory accumulator y = int_0^t exp(-(t - s) / tau_c) C(s) ds at time t
@dataclass(frozen=True)
class VolterraState:
    C: complex
    y: complex
    t: float

    @staticmethod
    def initial():
        return VolterraState(1.0 + 0j, 0j, 0.0)

    def as_array(self):
        return np.array([self.C, self.y], dtype=complex)


# Noise-averaged coherence equation C' = -K int_0^t exp(-(t - s) / tau_c) C(s) ds, integrated through the
# accumulator as C' = -K y, y' = C - y / tau_c. The memory coefficient is K = 2 a^2 D / (hbar^2 tau_c):
# the printed amplitude 2 a^2 D / hbar^2 would differentiate to C'' + C' / tau_c + (2 a^2 D / hbar^2) C = 0,
# which has no Markovian limit and disagrees with the damped-oscillator coefficient, so the kernel
# amplitude D / tau_c is kept inside the integral.
def integrate_volterra(params: PhysicalParams, t_max: float, dt: float = None):
    dt = dt or params.tau_c / 200
    states = volterra_trajectory(params, t_max, dt)
    return CoherenceSeries(dt, [state.C for state in states], 'nmqsd')


def volterra_trajectory(params: PhysicalParams, t_max: float, dt: float):
    if params.is_markovian():
        raise ValueError('Volterra integration needs a finite correlation time (tau_c > 0).')
    if dt > params.tau_c / 20:
        raise StabilityError(f'Step exceeds stability guard (dt: {dt}, limit tau_c / 20: {params.tau_c / 20}).')
    K = params.oscillator_stiffness()
    inverse_tau = 1 / params.tau_c

    def rhs(state: np.ndarray):
        coherence, memory = state
        return np.array([-K * memory, coherence - inverse_tau * memory])

    times = time_grid(t_max, dt)
    state = VolterraState.initial()
    states = [state]
    vector = state.as_array()
    for t in times[1:]:
        vector = rk4_step(rhs, vector, dt)
        states.append(VolterraState(complex(vector[0]), complex(vector[1]), float(t)))
    return states
