import numpy as np
from enum import Enum, unique
from dataclasses import dataclass
from .physical_params import PhysicalParams
from .coherence_series import CoherenceSeries, time_grid


@unique
class DampingRegime(Enum):
    UNDERDAMPED = 'underdamped'
    CRITICAL = 'critical'
    OVERDAMPED = 'overdamped'

    def display_name(self):
        return self.name.capitalize()


# Closed-form solution of C'' + C' / tau_c + K C = 0 with C(0) = 1, C'(0) = 0, K = 2 a^2 D / (hbar^2 tau_c).
# Underdamped solutions oscillate (coherence revivals); overdamped ones decay monotonically.
@dataclass(frozen=True)
class OscillatorSolution:
    regime: DampingRegime
    rate_fast: float # overdamped roots, both 1 / (2 tau_c) at criticality
    rate_slow: float
    omega: float # underdamped frequency, zero otherwise
    tau_c: float
    K: float

    critical_tolerance = 1e-12

    @staticmethod
    def from_params(params: PhysicalParams):
        if params.is_markovian():
            raise ValueError('Markovian case (tau_c = 0); use tegmark_decay.')
        if params.D == 0:
            raise ValueError('No decoherence: noise strength D is zero.')
        K = params.oscillator_stiffness()
        damping = 1 / params.tau_c
        discriminant = damping ** 2 - 4 * K
        if abs(discriminant) <= OscillatorSolution.critical_tolerance * damping ** 2:
            half_damping = damping / 2
            return OscillatorSolution(DampingRegime.CRITICAL, half_damping, half_damping, 0.0, params.tau_c, K)
        if discriminant < 0:
            omega = float(np.sqrt(-discriminant) / 2)
            return OscillatorSolution(DampingRegime.UNDERDAMPED, damping / 2, damping / 2, omega, params.tau_c, K)
        rate_fast = float((damping + np.sqrt(discriminant)) / 2)
        # Product of the roots is K; avoids cancellation in the slow root
        rate_slow = K / rate_fast
        return OscillatorSolution(DampingRegime.OVERDAMPED, rate_fast, rate_slow, 0.0, params.tau_c, K)

    def __str__(self):
        match self.regime:
            case DampingRegime.UNDERDAMPED:
                return f'OscillatorSolution({self.regime.display_name()}, omega: {self.omega}, tau_c: {self.tau_c})'
            case _:
                return f'OscillatorSolution({self.regime.display_name()}, rates: ({self.rate_fast}, {self.rate_slow}), tau_c: {self.tau_c})'

    def values(self, times):
        times = np.asarray(times, dtype=float)
        half_damping = 1 / (2 * self.tau_c)
        match self.regime:
            case DampingRegime.UNDERDAMPED:
                # sin(omega t) / omega written through sinc so the near-critical limit stays finite
                sine_term = times * np.sinc(self.omega * times / np.pi)
                return np.exp(-half_damping * times) * (np.cos(self.omega * times) + half_damping * sine_term)
            case DampingRegime.CRITICAL:
                return (1 + half_damping * times) * np.exp(-half_damping * times)
            case DampingRegime.OVERDAMPED:
                # Log-domain exponentials; stiff rate separations underflow cleanly instead of overflowing
                log_gap = np.log(self.rate_fast - self.rate_slow)
                slow = np.exp(np.log(self.rate_fast) - self.rate_slow * times - log_gap)
                fast = np.exp(np.log(self.rate_slow) - self.rate_fast * times - log_gap)
                return slow - fast
            case _:
                raise NotImplementedError(f'Evaluation not implemented for regime: {self.regime}.')

    # Analytic (C, C', C'') on the given times
    def derivatives(self, times):
        times = np.asarray(times, dtype=float)
        coherence = self.values(times)
        half_damping = 1 / (2 * self.tau_c)
        match self.regime:
            case DampingRegime.UNDERDAMPED:
                envelope = np.exp(-half_damping * times)
                phase = self.omega * times
                first = -(self.K / self.omega) * envelope * np.sin(phase)
                second = -(self.K / self.omega) * envelope * (self.omega * np.cos(phase) - half_damping * np.sin(phase))
            case DampingRegime.CRITICAL:
                envelope = np.exp(-half_damping * times)
                first = -half_damping ** 2 * times * envelope
                second = half_damping ** 2 * (half_damping * times - 1) * envelope
            case DampingRegime.OVERDAMPED:
                gap = self.rate_fast - self.rate_slow
                slow = np.exp(-self.rate_slow * times)
                fast = np.exp(-self.rate_fast * times)
                first = -self.K * (slow - fast) / gap
                second = self.K * (self.rate_slow * slow - self.rate_fast * fast) / gap
            case _:
                raise NotImplementedError(f'Derivatives not implemented for regime: {self.regime}.')
        return coherence, first, second

    def evaluate(self, t_max: float, dt: float):
        times = time_grid(t_max, dt)
        return CoherenceSeries(dt, self.values(times), 'eq16')

    def to_dict(self):
        return {'regime': self.regime.value,
                'rate_fast': self.rate_fast,
                'rate_slow': self.rate_slow,
                'omega': self.omega,
                'tau_c': self.tau_c,
                'K': self.K}
