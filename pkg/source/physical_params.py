from dataclasses import dataclass, replace, asdict


# Dimensionless convention by default: hbar = a = D = 1, so times are in units of the Tegmark time.
@dataclass(frozen=True)
class PhysicalParams:
    a: float = 1.0 # pointer-state separation
    hbar: float = 1.0
    D: float = 1.0 # noise strength (force^2 * time)
    tau_c: float = 1.0 # bath correlation time, 0 is the strict Markovian case
    beta: float = None # inverse temperature, only used by the tabulated spectral rate

    def __post_init__(self):
        error_message = self.validate_with_error_message()
        if error_message:
            raise ValueError(error_message)

    def validate_with_error_message(self):
        if not self.a > 0:
            return f'Separation a must be positive (a: {self.a}).'
        if not self.hbar > 0:
            return f'Action scale hbar must be positive (hbar: {self.hbar}).'
        if not self.D >= 0:
            return f'Noise strength D must be non-negative (D: {self.D}).'
        if not self.tau_c >= 0:
            return f'Correlation time tau_c must be non-negative (tau_c: {self.tau_c}).'
        if self.beta is not None and not self.beta > 0:
            return f'Inverse temperature beta must be positive when present (beta: {self.beta}).'
        return None

    def __str__(self):
        return f'PhysicalParams(a: {self.a}, hbar: {self.hbar}, D: {self.D}, tau_c: {self.tau_c}, beta: {self.beta})'

    def is_markovian(self):
        return self.tau_c == 0

    # Coupling prefactor a^2 / hbar^2 shared by every coherence law
    def coupling_scale(self):
        return self.a ** 2 / self.hbar ** 2

    # Coefficient K = 2 a^2 D / (hbar^2 tau_c) of the damped-oscillator coherence equation
    def oscillator_stiffness(self):
        if self.is_markovian():
            raise ValueError('Oscillator stiffness is undefined for a Markovian bath (tau_c = 0).')
        return 2 * self.coupling_scale() * self.D / self.tau_c

    # 8 a^2 D tau_c / hbar^2: above one the coherence oscillates, well above one is the deep-memory regime
    def memory_parameter(self):
        return 8 * self.coupling_scale() * self.D * self.tau_c

    def with_tau_c(self, tau_c: float):
        return replace(self, tau_c=tau_c)

    # Adopt the noise strength and correlation time of an exponential kernel (general kernels are normalized first)
    def with_kernel(self, kernel):
        canonical = kernel.normalize()
        return replace(self, D=canonical.D, tau_c=canonical.tau_c)

    def to_dict(self):
        return asdict(self)
