import numpy as np
from enum import Enum, unique
from dataclasses import dataclass


@unique
class KernelFamily(Enum):
    MARKOVIAN_DELTA = 'markovian_delta'
    EXPONENTIAL_OU = 'exponential_ou'
    GENERAL_EXPONENTIAL = 'general_exponential'

    def display_name(self):
        words = self.name.split('_')
        return ' '.join([word.capitalize() for word in words])


# Force correlation function alpha(t, s) of the environment, tagged by family.
# MarkovianDelta: 2 D delta(t - s)
# ExponentialOU: (D / tau_c) exp(-|t - s| / tau_c)
# GeneralExponential: A exp(-gamma (t - s)) Theta(t - s)
@dataclass(frozen=True)
class BathKernel:
    family: KernelFamily
    D: float = None
    tau_c: float = None
    A: float = None
    gamma: float = None

    @staticmethod
    def markovian_delta(D: float):
        return BathKernel(KernelFamily.MARKOVIAN_DELTA, D=D, tau_c=0.0)

    @staticmethod
    def exponential_ou(D: float, tau_c: float):
        return BathKernel(KernelFamily.EXPONENTIAL_OU, D=D, tau_c=tau_c)

    @staticmethod
    def general_exponential(A: float, gamma: float):
        return BathKernel(KernelFamily.GENERAL_EXPONENTIAL, A=A, gamma=gamma)

    def __post_init__(self):
        error_message = self.validate_with_error_message()
        if error_message:
            raise ValueError(error_message)

    def validate_with_error_message(self):
        match self.family:
            case KernelFamily.MARKOVIAN_DELTA:
                if self.D is None or self.D < 0:
                    return f'Markovian kernel needs a non-negative noise strength (D: {self.D}).'
            case KernelFamily.EXPONENTIAL_OU:
                if self.D is None or self.D < 0:
                    return f'OU kernel needs a non-negative noise strength (D: {self.D}).'
                if self.tau_c is None or not self.tau_c > 0:
                    return f'OU kernel needs a positive correlation time (tau_c: {self.tau_c}).'
            case KernelFamily.GENERAL_EXPONENTIAL:
                if self.A is None or self.A < 0:
                    return f'Exponential kernel needs a non-negative amplitude (A: {self.A}).'
                if self.gamma is None or not self.gamma > 0:
                    return f'Exponential kernel needs a positive decay rate (gamma: {self.gamma}).'
        return None

    def __str__(self):
        match self.family:
            case KernelFamily.MARKOVIAN_DELTA:
                return f'BathKernel({self.family.display_name()}, D: {self.D})'
            case KernelFamily.EXPONENTIAL_OU:
                return f'BathKernel({self.family.display_name()}, D: {self.D}, tau_c: {self.tau_c})'
            case _:
                return f'BathKernel({self.family.display_name()}, A: {self.A}, gamma: {self.gamma})'

    # Pointwise kernel value at lag dt >= 0
    def evaluate(self, dt):
        lag = np.asarray(dt, dtype=float)
        if np.any(lag < 0):
            raise ValueError(f'Kernel lag must be non-negative (dt: {dt}).')
        match self.family:
            case KernelFamily.MARKOVIAN_DELTA:
                raise ValueError('Markovian delta kernel has no pointwise value.')
            case KernelFamily.EXPONENTIAL_OU:
                value = (self.D / self.tau_c) * np.exp(-lag / self.tau_c)
            case KernelFamily.GENERAL_EXPONENTIAL:
                value = self.A * np.exp(-self.gamma * lag)
            case _:
                raise NotImplementedError(f'Kernel evaluation not implemented for family: {self.family}.')
        return float(value) if value.ndim == 0 else value

    # GeneralExponential(A, gamma) -> ExponentialOU(D = A / gamma, tau_c = 1 / gamma); other families unchanged
    def normalize(self):
        if self.family == KernelFamily.GENERAL_EXPONENTIAL:
            return BathKernel.exponential_ou(self.A / self.gamma, 1 / self.gamma)
        return self

    # Integral of alpha over all lags. One-sided kernels are symmetrized, so every family integrates to 2 D.
    def integrated_strength(self):
        match self.family:
            case KernelFamily.MARKOVIAN_DELTA | KernelFamily.EXPONENTIAL_OU:
                return 2 * self.D
            case KernelFamily.GENERAL_EXPONENTIAL:
                return 2 * self.A / self.gamma
            case _:
                raise NotImplementedError(f'Integrated strength not implemented for family: {self.family}.')
